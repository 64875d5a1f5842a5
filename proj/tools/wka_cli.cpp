// Command-line front end: build, verify, derive, dual, check-gen-kac,
// recover-counit and report. Exit codes: 0 all checks pass, 1 verification
// failure, 2 input error.

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wka/constructors.hpp"
#include "wka/duality.hpp"
#include "wka/io.hpp"

namespace {

using json = nlohmann::json;
using namespace wka;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

std::vector<std::size_t> parse_shape(const std::string& s)
{
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(part, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != part.size() || v == 0)
            throw InvalidArgument("bad block shape '" + s + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw InvalidArgument("empty block shape");
    return out;
}

std::size_t parse_count(const std::string& s)
{
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != s.size())
        throw InvalidArgument("expected a positive integer, got '" + s + "'");
    return v;
}

// "pair:N", "cyclic:N" or a groupoid table file.
Groupoid parse_groupoid(const std::string& s)
{
    if (s.rfind("pair:", 0) == 0)
        return pair_groupoid(parse_count(s.substr(5)));
    if (s.rfind("cyclic:", 0) == 0)
        return cyclic_group(parse_count(s.substr(7)));
    return read_groupoid_file(s);
}

void need(const std::vector<std::string>& params, std::size_t n, const std::string& what)
{
    if (params.size() != n)
        throw InvalidArgument(what + " expects " + std::to_string(n) + " parameter(s)");
}

WeakKac build(const std::string& kind, const std::vector<std::string>& params, unsigned seed,
              const Tolerance& tol)
{
    if (kind == "cube-family") {
        need(params, 1, kind);
        return cube_family(parse_count(params[0]));
    }
    if (kind == "elementary") {
        need(params, 1, kind);
        return elementary(parse_shape(params[0]));
    }
    if (kind == "dual-elementary") {
        need(params, 1, kind);
        return dual_elementary(parse_shape(params[0]));
    }
    if (kind == "group-algebra") {
        need(params, 1, kind);
        WeakKac w = groupoid_algebra(parse_groupoid(params[0]), tol);
        w.name = "C[" + params[0] + "]";
        return w;
    }
    if (kind == "function-algebra") {
        need(params, 1, kind);
        WeakKac w = groupoid_function_algebra(parse_groupoid(params[0]));
        w.name = "C(" + params[0] + ")";
        return w;
    }
    if (kind == "twist") {
        need(params, 1, kind);
        const auto shape = parse_shape(params[0]);
        std::mt19937_64 rng(seed);
        return elementary_twist(shape, random_cocycle(shape.size(), rng), tol).w;
    }
    if (kind == "shift-crossed-product") {
        need(params, 1, kind);
        const std::size_t n = parse_count(params[0]);
        WeakKac base = groupoid_function_algebra(pair_groupoid(n));
        base.name = "C(K" + std::to_string(n) + ")";
        return crossed_product(base, shift_action(n), tol);
    }
    if (kind == "tensor") {
        need(params, 2, kind);
        return tensor_product(read_wka_file(params[0]), read_wka_file(params[1]));
    }
    if (kind == "direct-sum") {
        need(params, 2, kind);
        return direct_sum(read_wka_file(params[0]), read_wka_file(params[1]));
    }
    throw InvalidArgument("unknown constructor '" + kind + "'");
}

json complex_list(const CVector& v)
{
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back({v(i).real(), v(i).imag()});
    return arr;
}

struct Section {
    std::string name;
    json data;
    VerificationReport report;
};

Section derive_one(const WeakKac& w, const std::string& what, const Tolerance& tol)
{
    Section s{what, json::object(), VerificationReport(tol.abs_tol)};
    if (what == "cartan") {
        CartanPair cp = cartan_subalgebras(w, tol);
        WedderburnResult rs = realize_subalgebra(cp.ns, tol);
        WedderburnResult rt = realize_subalgebra(cp.nt, tol);
        s.data["dim_ns"] = cp.ns.dim();
        s.data["dim_nt"] = cp.nt.dim();
        s.data["ns_block_shape"] = rs.algebra->block_shape();
        s.data["nt_block_shape"] = rt.algebra->block_shape();
        s.report = cp.report;
    } else if (what == "haar") {
        HaarProjection hp = haar_projection(w, tol);
        HaarTrace ht = normalized_haar_trace(w, tol);
        s.data["projection"] = complex_list(hp.p.coeffs);
        s.data["normalized_trace"] = complex_list(ht.phi.coeffs);
        s.report.merge(hp.report, "projection.");
        s.report.merge(ht.report, "trace.");
    } else if (what == "counital-rep") {
        CounitalRepresentation cr = counital_representation(w, tol);
        s.data["dim"] = cr.space.cols();
        s.data["support"] = cr.support;
        s.data["multiplicities"] = cr.multiplicities;
        s.report = cr.report;
    } else if (what == "fusion") {
        FusionTable ft = fusion_ring(w, tol);
        s.data["irreducibles"] = ft.characters.size();
        s.data["support"] = ft.support;
        s.data["involution"] = ft.involution;
        s.data["multiplicities"] = ft.n;
        s.report = ft.report;
    } else if (what == "quotient") {
        CounitalQuotient q = counital_quotient(w, tol);
        s.data["blocks"] = q.blocks;
        s.data["dim"] = q.quotient.dim();
        s.data["block_shape"] = q.quotient.algebra().block_shape();
        s.report = q.report;
    } else if (what == "expectations") {
        HaarTrace ht = normalized_haar_trace(w, tol, false);
        HaarExpectations he = haar_conditional_expectations(w, ht.phi.coeffs, tol);
        s.report = he.report;
    } else if (what == "hypercenter") {
        SubalgebraBasis hc = hyper_center(w, tol);
        s.data["dim"] = hc.dim();
        auto split = decompose_if_split(w, tol);
        s.data["split"] = split.has_value();
        if (split) {
            s.data["summand_dims"] = {split->first.dim(), split->second.dim()};
            s.report.merge(verify_weak_kac(split->first, tol), "summand1.");
            s.report.merge(verify_weak_kac(split->second, tol), "summand2.");
        }
        s.report.add("closure", hc.closure_residual(), "hyper-center is a *-subalgebra");
    } else {
        throw InvalidArgument("unknown --what '" + what + "'");
    }
    return s;
}

int emit(const std::vector<Section>& sections, const std::string& format)
{
    bool ok = true;
    for (const auto& s : sections)
        ok = ok && s.report.passed();
    if (format == "json") {
        json out = json::object();
        for (const auto& s : sections) {
            json j = s.data;
            j["report"] = s.report.to_json();
            out[s.name] = j;
        }
        out["verdict"] = ok ? "pass" : "fail";
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& s : sections) {
            std::cout << "== " << s.name << '\n';
            if (!s.data.empty())
                std::cout << s.data.dump() << '\n';
            std::cout << s.report.to_text();
        }
    }
    return ok ? kPass : kFail;
}

Tolerance pick_tolerance(const std::optional<double>& tol)
{
    if (tol)
        return Tolerance(*tol);
    return Tolerance::from_env();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite-dimensional weak Kac algebras: construction and verification"};
    app.require_subcommand(1);

    std::optional<double> tol_opt;
    std::string format = "text";

    std::string kind, out_path, in_path;
    std::vector<std::string> params;
    unsigned seed = 1;
    auto* build_cmd = app.add_subcommand("build", "Construct a weak Kac algebra and write it");
    build_cmd->add_option("constructor", kind,
                          "cube-family | elementary | dual-elementary | group-algebra | "
                          "function-algebra | twist | shift-crossed-product | tensor | direct-sum")
        ->required();
    build_cmd->add_option("params", params, "Constructor parameters");
    build_cmd->add_option("-o,--output", out_path, "Output file")->required();
    build_cmd->add_option("--seed", seed, "Seed for random cocycles");
    build_cmd->add_option("--tol", tol_opt, "Absolute tolerance (default 1e-9 or $WKA_TOL)");

    auto* verify_cmd = app.add_subcommand("verify", "Check every weak Kac axiom");
    verify_cmd->add_option("file", in_path)->required();
    verify_cmd->add_option("--tol", tol_opt, "Absolute tolerance");
    verify_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> what;
    auto* derive_cmd = app.add_subcommand("derive", "Compute derived structures");
    derive_cmd->add_option("file", in_path)->required();
    derive_cmd->add_option("--what", what, "cartan, haar, counital-rep, fusion, quotient, "
                                           "expectations, hypercenter or all")
        ->required();
    derive_cmd->add_option("--tol", tol_opt, "Absolute tolerance");
    derive_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* dual_cmd = app.add_subcommand("dual", "Write the dual weak Kac algebra");
    dual_cmd->add_option("file", in_path)->required();
    dual_cmd->add_option("-o,--output", out_path, "Output file")->required();
    dual_cmd->add_option("--tol", tol_opt, "Absolute tolerance");

    std::string trace = "normalized";
    auto* gen_cmd = app.add_subcommand("check-gen-kac", "Check the generalized Kac conditions");
    gen_cmd->add_option("file", in_path)->required();
    gen_cmd->add_option("--trace", trace)->check(CLI::IsMember({"normalized", "regular"}));
    gen_cmd->add_option("--tol", tol_opt, "Absolute tolerance");
    gen_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* rec_cmd = app.add_subcommand("recover-counit", "Recover eps from (M, Delta, S)");
    rec_cmd->add_option("file", in_path)->required();
    rec_cmd->add_option("--tol", tol_opt, "Absolute tolerance");
    rec_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* report_cmd = app.add_subcommand("report", "Axioms plus structural invariants");
    report_cmd->add_option("file", in_path)->required();
    report_cmd->add_option("--tol", tol_opt, "Absolute tolerance");
    report_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    const Tolerance tol = pick_tolerance(tol_opt);
    try {
        if (*build_cmd) {
            WeakKac w = build(kind, params, seed, tol);
            std::string p;
            for (const auto& s : params)
                p += (p.empty() ? "" : " ") + s;
            write_wka_file(out_path, w, {{"constructor", kind}, {"params", p.empty() ? "-" : p}});
            std::cout << "wrote " << out_path << " (dim " << w.dim() << ")\n";
            return kPass;
        }
        const WeakKac w = read_wka_file(in_path);
        if (*verify_cmd)
            return emit({{"verify", json::object(), verify_weak_kac(w, tol)}}, format);
        if (*derive_cmd) {
            std::vector<std::string> items;
            for (const auto& x : what) {
                if (x == "all")
                    items.insert(items.end(), {"cartan", "haar", "counital-rep", "fusion",
                                               "quotient", "expectations", "hypercenter"});
                else
                    items.push_back(x);
            }
            std::vector<Section> sections;
            for (const auto& x : items)
                sections.push_back(derive_one(w, x, tol));
            return emit(sections, format);
        }
        if (*dual_cmd) {
            WeakKac d = dual(w, tol);
            write_wka_file(out_path, d, {{"constructor", "dual"}});
            std::cout << "wrote " << out_path << " (dim " << d.dim() << ")\n";
            return kPass;
        }
        if (*gen_cmd) {
            CVector phi = trace == "regular" ? w.algebra().regular_trace_coeffs()
                                             : normalized_haar_trace(w, tol, false).phi.coeffs;
            return emit({{"check-gen-kac", {{"trace", trace}}, check_generalized_kac(w, phi, tol)}},
                        format);
        }
        if (*rec_cmd) {
            KacBimoduleResult kb =
                check_kac_bimodule(w.algebra_ptr(), w.coproduct_matrix(), w.antipode(), tol);
            json data = json::object();
            if (kb.counit) {
                data["counit"] = complex_list(*kb.counit);
                kb.report.add("matches_stored", max_abs(CVector(*kb.counit - w.counit())),
                              "recovered eps equals the stored counit");
            } else {
                kb.report.add_flag("recovered", false, 0.0, "no counit recovered");
            }
            return emit({{"recover-counit", data, kb.report}}, format);
        }
        if (*report_cmd) {
            VerificationReport r = verify_weak_kac(w, tol);
            r.merge(invariant_report(w, tol), "invariants.");
            Triviality t = triviality(w);
            json data = {{"name", w.name},
                         {"dim", w.dim()},
                         {"block_shape", w.algebra().block_shape()},
                         {"commutator", t.commutator},
                         {"cocommutator", t.cocommutator},
                         {"unit_defect", t.unit_defect}};
            return emit({{"report", data, r}}, format);
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const IndexOutOfRange& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvalidArgument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvalidGroupoid& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvalidCocycle& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return kFail;
    }
    return kInputError;
}
