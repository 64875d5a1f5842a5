#include "support.hpp"

#include "wka/constructors.hpp"
#include "wka/io.hpp"

using namespace wka;

namespace {

const Tolerance tol;

std::size_t parse_error_line(const std::string& text)
{
    try {
        parse_wka(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("serialization round trip is exact")
{
    const auto w = groupoid_function_algebra(pair_groupoid(2));
    const std::string text = to_text(serialize(w, {{"constructor", "function-algebra"}}));
    const WkaFile f = parse_wka(text);
    CHECK(f.metadata.at("constructor") == "function-algebra");
    const WeakKac back = deserialize(f);
    CHECK(max_abs(CMatrix(back.coproduct_matrix() - w.coproduct_matrix())) == 0.0);
    CHECK(max_abs(CMatrix(back.antipode() - w.antipode())) == 0.0);
    CHECK(max_abs(CVector(back.counit() - w.counit())) == 0.0);
    CHECK(to_text(serialize(back, {{"constructor", "function-algebra"}})) == text);

    // irrational coefficients survive the text form bit for bit
    const auto m = elementary({1, 2});
    const WeakKac mb = deserialize(parse_wka(to_text(serialize(m))));
    CHECK(max_abs(CMatrix(mb.coproduct_matrix() - m.coproduct_matrix())) == 0.0);
    CHECK(max_abs(CVector(mb.counit() - m.counit())) == 0.0);
}

TEST_CASE("indices out of range are rejected")
{
    WkaFile f = serialize(groupoid_function_algebra(pair_groupoid(2)));
    f.counit.push_back({{f.dim}, 1.0, 0.0});
    CHECK_THROWS_AS(deserialize(f), IndexOutOfRange);
    f = serialize(groupoid_function_algebra(pair_groupoid(2)));
    f.coproduct.front().index[2] = 99;
    CHECK_THROWS_AS(deserialize(f), IndexOutOfRange);
}

TEST_CASE("cube_family(2) file carries n^4 coproduct terms")
{
    // Delta(f^k_ij) has n terms for each of the n^3 basis elements
    const WkaFile f = serialize(cube_family(2));
    CHECK(f.coproduct.size() == 16);
    const WeakKac back = deserialize(parse_wka(to_text(f)));
    CHECK_REPORT(verify_weak_kac(back, tol), 1e-12);
}

TEST_CASE("parse errors carry the line number")
{
    const std::string text = to_text(serialize(elementary({1})));
    CHECK(parse_error_line("wka 1\nname -\nblock_shape x\n") == 3);
    std::string broken = text;
    broken.replace(broken.find("counit 1"), 8, "counit z");
    CHECK(parse_error_line(broken) > 0);
    CHECK_THROWS_AS(parse_wka("hello"), ParseError);
    // a product table that disagrees with the block shape
    WkaFile f = serialize(elementary({1}));
    f.mult.front().re = 2.0;
    CHECK_THROWS_AS(deserialize(f), ParseError);
}

TEST_CASE("groupoid table files")
{
    const std::string text = "# Z/2\n"
                             "units: e\n"
                             "morphisms: e g\n"
                             "compose: e e -> e\n"
                             "compose: e g -> g\n"
                             "compose: g e -> g\n"
                             "compose: g g -> e\n"
                             "inverse: e -> e\n"
                             "inverse: g -> g\n";
    const Groupoid g = groupoid_from_tables(parse_groupoid_tables(text));
    CHECK(g.is_group());
    CHECK(g.size() == 2);
    try {
        parse_groupoid_tables("units: e\ncompose: e e e\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("reports are deterministic")
{
    const auto w = cube_family(2);
    const std::string a = verify_weak_kac(w, tol).to_json().dump();
    const std::string b = verify_weak_kac(w, tol).to_json().dump();
    CHECK(a == b);
    CHECK(verify_weak_kac(w, tol).to_text() == verify_weak_kac(w, tol).to_text());
}
