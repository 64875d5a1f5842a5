#pragma once

// Text serialization of weak Kac algebras and the groupoid table format.
//
// WkaFile text layout, one record per line:
//   wka 1
//   name <text>
//   block_shape <d_1> ... <d_K>
//   dim <n>
//   meta <key> <value>           (any number)
//   labels <n>, then n label lines
//   mult <count>, then "a b r re im" lines
//   star <count>, then "a r re im" lines
//   unit <count>, then "r re im" lines
//   coproduct <count>, then "x a b re im" lines
//   antipode <count>, then "x r re im" lines
//   counit <count>, then "x re im" lines
//   end
// Indices are 0-based, entries sorted by index, numbers printed with %.17g.

#include <map>
#include <string>
#include <vector>

#include "wka/groupoid.hpp"
#include "wka/weak_kac.hpp"

namespace wka {

struct SparseEntry {
    std::vector<std::size_t> index;
    double re = 0.0;
    double im = 0.0;
};

struct WkaFile {
    int format_version = 1;
    std::string name;
    std::vector<std::size_t> block_shape;
    std::size_t dim = 0;
    std::map<std::string, std::string> metadata;
    std::vector<std::string> labels;
    std::vector<SparseEntry> mult;
    std::vector<SparseEntry> star;
    std::vector<SparseEntry> unit;
    std::vector<SparseEntry> coproduct;
    std::vector<SparseEntry> antipode;
    std::vector<SparseEntry> counit;
};

WkaFile serialize(const WeakKac& w, const std::map<std::string, std::string>& metadata = {});
/// Structural validation only: shapes, index ranges, and agreement of the
/// stored product, involution and unit with the block shape. Throws
/// IndexOutOfRange and ParseError.
WeakKac deserialize(const WkaFile& f);

std::string to_text(const WkaFile& f);
/// Throws ParseError with the line number and field.
WkaFile parse_wka(const std::string& text);

void write_wka_file(const std::string& path, const WeakKac& w,
                    const std::map<std::string, std::string>& metadata = {});
WeakKac read_wka_file(const std::string& path);

/// Lines "units: a b", "morphisms: a b c", "compose: x y -> z" and
/// "inverse: x -> y"; '#' starts a comment. Throws ParseError.
GroupoidTables parse_groupoid_tables(const std::string& text);
Groupoid read_groupoid_file(const std::string& path);

} // namespace wka
