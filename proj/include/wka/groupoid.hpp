#pragma once

// Finite groupoids given by explicit tables.

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace wka {

class Groupoid {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t x) const { return labels_[x]; }
    std::optional<std::size_t> find(const std::string& label) const;

    /// Indices of the units, in the order they were declared.
    const std::vector<std::size_t>& units() const { return units_; }
    bool is_unit(std::size_t x) const { return source_[x] == x; }
    bool is_group() const { return units_.size() == 1; }
    /// Every isotropy group trivial: at most one morphism between two units.
    bool is_principal() const;

    std::size_t source(std::size_t x) const { return source_[x]; }
    std::size_t target(std::size_t x) const { return target_[x]; }
    std::size_t inverse(std::size_t x) const { return inverse_[x]; }
    /// xy, or npos when s(x) != t(y).
    std::size_t compose(std::size_t x, std::size_t y) const { return table_[x * size() + y]; }

    /// Validates every groupoid axiom; throws InvalidGroupoid naming the first violation.
    static Groupoid from_parts(std::vector<std::string> labels, std::vector<std::size_t> units,
                               std::vector<std::size_t> table, std::vector<std::size_t> inverse);

private:
    std::vector<std::string> labels_;
    std::vector<std::size_t> units_;
    std::vector<std::size_t> source_;
    std::vector<std::size_t> target_;
    std::vector<std::size_t> inverse_;
    std::vector<std::size_t> table_;
};

/// Label-based description, as read from the groupoid table text format.
struct GroupoidTables {
    std::vector<std::string> units;
    std::vector<std::string> morphisms;
    std::vector<std::tuple<std::string, std::string, std::string>> compose;
    std::vector<std::pair<std::string, std::string>> inverse;
};

Groupoid groupoid_from_tables(const GroupoidTables& data);

/// K_n: morphisms (i,j) with (i,j)(j,k) = (i,k); index of (i,j) is (i-1) n + (j-1).
Groupoid pair_groupoid(std::size_t n);
/// Z/n as a one-unit groupoid; element k is g^k.
Groupoid cyclic_group(std::size_t n);
Groupoid disjoint_union(const Groupoid& a, const Groupoid& b);

} // namespace wka
