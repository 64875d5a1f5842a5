#include "wka/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wka {

namespace {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void push(std::vector<SparseEntry>& out, std::vector<std::size_t> idx, cplx v)
{
    if (v != cplx(0.0))
        out.push_back({std::move(idx), v.real(), v.imag()});
}

void sort_entries(std::vector<SparseEntry>& v)
{
    std::sort(v.begin(), v.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "file", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class LineReader {
public:
    explicit LineReader(const std::string& text) : in_(text) {}

    // Next line split on whitespace; blank lines are skipped.
    std::vector<std::string> next(const std::string& field)
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            std::istringstream ls(line);
            std::vector<std::string> tok;
            std::string t;
            while (ls >> t)
                tok.push_back(t);
            if (!tok.empty())
                return tok;
        }
        throw ParseError(line_ + 1, field, "unexpected end of input");
    }

    std::string next_raw(const std::string& field)
    {
        std::string line;
        if (!std::getline(in_, line))
            throw ParseError(line_ + 1, field, "unexpected end of input");
        ++line_;
        return line;
    }

    std::size_t line() const { return line_; }

private:
    std::istringstream in_;
    std::size_t line_ = 0;
};

std::size_t parse_size(const std::string& s, std::size_t line, const std::string& field)
{
    try {
        std::size_t pos = 0;
        if (!s.empty() && s[0] == '-')
            throw std::invalid_argument("negative");
        unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument("trailing");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ParseError(line, field, "expected a non-negative integer, got '" + s + "'");
    }
}

double parse_double(const std::string& s, std::size_t line, const std::string& field)
{
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, field, "expected a number, got '" + s + "'");
    }
}

std::vector<SparseEntry> parse_section(LineReader& r, const std::string& field, std::size_t arity)
{
    auto head = r.next(field);
    if (head.size() != 2 || head[0] != field)
        throw ParseError(r.line(), field, "expected '" + field + " <count>'");
    const std::size_t count = parse_size(head[1], r.line(), field);
    std::vector<SparseEntry> out;
    out.reserve(count);
    for (std::size_t e = 0; e < count; ++e) {
        auto tok = r.next(field);
        if (tok.size() != arity + 2)
            throw ParseError(r.line(), field,
                             "expected " + std::to_string(arity) + " indices and re im");
        SparseEntry s;
        for (std::size_t k = 0; k < arity; ++k)
            s.index.push_back(parse_size(tok[k], r.line(), field));
        s.re = parse_double(tok[arity], r.line(), field);
        s.im = parse_double(tok[arity + 1], r.line(), field);
        out.push_back(std::move(s));
    }
    return out;
}

void write_section(std::ostringstream& os, const std::string& field,
                   const std::vector<SparseEntry>& v)
{
    os << field << ' ' << v.size() << '\n';
    for (const SparseEntry& e : v) {
        for (std::size_t i : e.index)
            os << i << ' ';
        os << format_double(e.re) << ' ' << format_double(e.im) << '\n';
    }
}

void check_range(const std::vector<SparseEntry>& v, std::size_t n, const std::string& field)
{
    for (const SparseEntry& e : v)
        for (std::size_t i : e.index)
            if (i >= n)
                throw IndexOutOfRange(field + ": index " + std::to_string(i) + " >= dim " +
                                      std::to_string(n));
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

} // namespace

WkaFile serialize(const WeakKac& w, const std::map<std::string, std::string>& metadata)
{
    const FdAlgebra& a = w.algebra();
    const std::size_t n = a.dim();
    WkaFile f;
    f.name = w.name;
    f.block_shape = a.block_shape();
    f.dim = n;
    f.metadata = metadata;
    for (std::size_t x = 0; x < n; ++x)
        f.labels.push_back(a.label_name(x));
    for (const auto& m : a.mult_entries())
        f.mult.push_back({{m.a, m.b, m.r}, 1.0, 0.0});
    for (std::size_t x = 0; x < n; ++x)
        f.star.push_back({{x, a.star_index(x)}, 1.0, 0.0});
    const CVector u = a.unit();
    for (std::size_t r = 0; r < n; ++r)
        push(f.unit, {r}, u(r));
    const CMatrix& d = w.coproduct_matrix();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                push(f.coproduct, {x, p, q}, d(p * n + q, x));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t r = 0; r < n; ++r)
            push(f.antipode, {x, r}, w.antipode()(r, x));
    for (std::size_t x = 0; x < n; ++x)
        push(f.counit, {x}, w.counit()(x));
    for (auto* v : {&f.mult, &f.star, &f.unit, &f.coproduct, &f.antipode, &f.counit})
        sort_entries(*v);
    return f;
}

WeakKac deserialize(const WkaFile& f)
{
    if (f.format_version != 1)
        throw ParseError(0, "wka", "unsupported format version " + std::to_string(f.format_version));
    if (f.block_shape.empty() || std::count(f.block_shape.begin(), f.block_shape.end(), 0))
        throw ParseError(0, "block_shape", "block sizes must be positive");
    AlgebraPtr alg = make_algebra(f.block_shape);
    const std::size_t n = alg->dim();
    if (f.dim != n)
        throw ParseError(0, "dim", "dim " + std::to_string(f.dim) + " does not match block shape (" +
                                       std::to_string(n) + ")");
    if (!f.labels.empty() && f.labels.size() != n)
        throw ParseError(0, "labels", "expected " + std::to_string(n) + " labels");
    check_range(f.mult, n, "mult");
    check_range(f.star, n, "star");
    check_range(f.unit, n, "unit");
    check_range(f.coproduct, n, "coproduct");
    check_range(f.antipode, n, "antipode");
    check_range(f.counit, n, "counit");

    // stored product, involution and unit must be those of the block shape
    std::vector<SparseEntry> mult, star, unit;
    for (const auto& m : alg->mult_entries())
        mult.push_back({{m.a, m.b, m.r}, 1.0, 0.0});
    for (std::size_t x = 0; x < n; ++x)
        star.push_back({{x, alg->star_index(x)}, 1.0, 0.0});
    const CVector u = alg->unit();
    for (std::size_t r = 0; r < n; ++r)
        push(unit, {r}, u(r));
    auto same = [](std::vector<SparseEntry> a, std::vector<SparseEntry> b) {
        sort_entries(a);
        sort_entries(b);
        if (a.size() != b.size())
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].index != b[i].index || a[i].re != b[i].re || a[i].im != b[i].im)
                return false;
        return true;
    };
    if (!same(mult, f.mult))
        throw ParseError(0, "mult", "product does not match the matrix-unit basis of the block shape");
    if (!same(star, f.star))
        throw ParseError(0, "star", "involution does not match the block shape");
    if (!same(unit, f.unit))
        throw ParseError(0, "unit", "unit does not match the block shape");

    CMatrix d = CMatrix::Zero(n * n, n);
    for (const auto& e : f.coproduct)
        d(e.index[1] * n + e.index[2], e.index[0]) += cplx(e.re, e.im);
    CMatrix s = CMatrix::Zero(n, n);
    for (const auto& e : f.antipode)
        s(e.index[1], e.index[0]) += cplx(e.re, e.im);
    CVector eps = CVector::Zero(n);
    for (const auto& e : f.counit)
        eps(e.index[0]) += cplx(e.re, e.im);
    WeakKac w(alg, d, s, eps);
    w.name = f.name;
    return w;
}

std::string to_text(const WkaFile& f)
{
    std::ostringstream os;
    os << "wka " << f.format_version << '\n';
    os << "name " << (f.name.empty() ? "-" : f.name) << '\n';
    os << "block_shape";
    for (std::size_t b : f.block_shape)
        os << ' ' << b;
    os << '\n' << "dim " << f.dim << '\n';
    for (const auto& [k, v] : f.metadata)
        os << "meta " << k << ' ' << v << '\n';
    os << "labels " << f.labels.size() << '\n';
    for (const auto& l : f.labels)
        os << l << '\n';
    write_section(os, "mult", f.mult);
    write_section(os, "star", f.star);
    write_section(os, "unit", f.unit);
    write_section(os, "coproduct", f.coproduct);
    write_section(os, "antipode", f.antipode);
    write_section(os, "counit", f.counit);
    os << "end\n";
    return os.str();
}

WkaFile parse_wka(const std::string& text)
{
    LineReader r(text);
    WkaFile f;
    auto head = r.next("wka");
    if (head.size() != 2 || head[0] != "wka")
        throw ParseError(r.line(), "wka", "expected header 'wka <version>'");
    f.format_version = static_cast<int>(parse_size(head[1], r.line(), "wka"));
    if (f.format_version != 1)
        throw ParseError(r.line(), "wka", "unsupported format version " + head[1]);

    auto name = r.next("name");
    if (name[0] != "name" || name.size() < 2)
        throw ParseError(r.line(), "name", "expected 'name <text>'");
    for (std::size_t i = 1; i < name.size(); ++i)
        f.name += (i > 1 ? " " : "") + name[i];
    if (f.name == "-")
        f.name.clear();

    auto shape = r.next("block_shape");
    if (shape[0] != "block_shape" || shape.size() < 2)
        throw ParseError(r.line(), "block_shape", "expected 'block_shape <d_1> ...'");
    for (std::size_t i = 1; i < shape.size(); ++i) {
        std::size_t b = parse_size(shape[i], r.line(), "block_shape");
        if (b == 0)
            throw ParseError(r.line(), "block_shape", "block sizes must be positive");
        f.block_shape.push_back(b);
    }
    auto dim = r.next("dim");
    if (dim.size() != 2 || dim[0] != "dim")
        throw ParseError(r.line(), "dim", "expected 'dim <n>'");
    f.dim = parse_size(dim[1], r.line(), "dim");
    std::size_t expected = 0;
    for (std::size_t b : f.block_shape)
        expected += b * b;
    if (f.dim != expected)
        throw ParseError(r.line(), "dim", "dim does not match block shape");

    auto tok = r.next("labels");
    while (tok[0] == "meta") {
        if (tok.size() < 3)
            throw ParseError(r.line(), "meta", "expected 'meta <key> <value>'");
        std::string v;
        for (std::size_t i = 2; i < tok.size(); ++i)
            v += (i > 2 ? " " : "") + tok[i];
        f.metadata[tok[1]] = v;
        tok = r.next("labels");
    }
    if (tok.size() != 2 || tok[0] != "labels")
        throw ParseError(r.line(), "labels", "expected 'labels <count>'");
    const std::size_t nl = parse_size(tok[1], r.line(), "labels");
    for (std::size_t i = 0; i < nl; ++i)
        f.labels.push_back(trim(r.next_raw("labels")));

    f.mult = parse_section(r, "mult", 3);
    f.star = parse_section(r, "star", 2);
    f.unit = parse_section(r, "unit", 1);
    f.coproduct = parse_section(r, "coproduct", 3);
    f.antipode = parse_section(r, "antipode", 2);
    f.counit = parse_section(r, "counit", 1);
    auto end = r.next("end");
    if (end.size() != 1 || end[0] != "end")
        throw ParseError(r.line(), "end", "expected 'end'");
    return f;
}

void write_wka_file(const std::string& path, const WeakKac& w,
                    const std::map<std::string, std::string>& metadata)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    out << to_text(serialize(w, metadata));
}

WeakKac read_wka_file(const std::string& path)
{
    return deserialize(parse_wka(read_file(path)));
}

GroupoidTables parse_groupoid_tables(const std::string& text)
{
    GroupoidTables t;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    bool have_units = false, have_morphisms = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty())
            continue;
        const auto colon = s.find(':');
        if (colon == std::string::npos)
            throw ParseError(line, "record", "expected '<key>: ...'");
        const std::string key = trim(s.substr(0, colon));
        const std::vector<std::string> rest = words(s.substr(colon + 1));
        if (key == "units") {
            t.units.insert(t.units.end(), rest.begin(), rest.end());
            have_units = true;
        } else if (key == "morphisms") {
            t.morphisms.insert(t.morphisms.end(), rest.begin(), rest.end());
            have_morphisms = true;
        } else if (key == "compose") {
            if (rest.size() != 4 || rest[2] != "->")
                throw ParseError(line, "compose", "expected 'compose: x y -> z'");
            t.compose.emplace_back(rest[0], rest[1], rest[3]);
        } else if (key == "inverse") {
            if (rest.size() != 3 || rest[1] != "->")
                throw ParseError(line, "inverse", "expected 'inverse: x -> y'");
            t.inverse.emplace_back(rest[0], rest[2]);
        } else {
            throw ParseError(line, key, "unknown record");
        }
    }
    if (!have_units)
        throw ParseError(line, "units", "missing 'units:' record");
    if (!have_morphisms)
        throw ParseError(line, "morphisms", "missing 'morphisms:' record");
    return t;
}

Groupoid read_groupoid_file(const std::string& path)
{
    return groupoid_from_tables(parse_groupoid_tables(read_file(path)));
}

} // namespace wka
