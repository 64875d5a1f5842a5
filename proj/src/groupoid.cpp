#include "wka/groupoid.hpp"

#include <map>
#include <set>

#include "wka/errors.hpp"

namespace wka {

std::optional<std::size_t> Groupoid::find(const std::string& label) const
{
    for (std::size_t x = 0; x < labels_.size(); ++x)
        if (labels_[x] == label)
            return x;
    return std::nullopt;
}

bool Groupoid::is_principal() const
{
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t x = 0; x < size(); ++x)
        if (!seen.insert({source_[x], target_[x]}).second)
            return false;
    return true;
}

Groupoid Groupoid::from_parts(std::vector<std::string> labels, std::vector<std::size_t> units,
                              std::vector<std::size_t> table, std::vector<std::size_t> inverse)
{
    const std::size_t n = labels.size();
    if (n == 0)
        throw InvalidGroupoid("nonempty: no morphisms");
    if (units.empty())
        throw InvalidGroupoid("units: no units declared");
    if (table.size() != n * n || inverse.size() != n)
        throw InvalidGroupoid("tables: composition or inverse table has the wrong size");
    std::set<std::string> names(labels.begin(), labels.end());
    if (names.size() != n)
        throw InvalidGroupoid("labels: duplicate morphism label");
    std::vector<bool> unit_flag(n, false);
    for (std::size_t u : units) {
        if (u >= n)
            throw InvalidGroupoid("units: unit is not a morphism");
        if (unit_flag[u])
            throw InvalidGroupoid("units: duplicate unit " + labels[u]);
        unit_flag[u] = true;
    }
    for (std::size_t v : table)
        if (v != npos && v >= n)
            throw InvalidGroupoid("composition: result out of range");
    auto comp = [&](std::size_t x, std::size_t y) { return table[x * n + y]; };

    Groupoid g;
    g.source_.assign(n, npos);
    g.target_.assign(n, npos);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t u : units) {
            if (comp(x, u) == x) {
                if (g.source_[x] != npos)
                    throw InvalidGroupoid("units: " + labels[x] + " has two right units");
                g.source_[x] = u;
            }
            if (comp(u, x) == x) {
                if (g.target_[x] != npos)
                    throw InvalidGroupoid("units: " + labels[x] + " has two left units");
                g.target_[x] = u;
            }
        }
        if (g.source_[x] == npos || g.target_[x] == npos)
            throw InvalidGroupoid("units: no neutral unit for " + labels[x]);
    }
    for (std::size_t u : units)
        if (g.source_[u] != u || g.target_[u] != u)
            throw InvalidGroupoid("units: unit " + labels[u] + " is not its own source and target");
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const bool composable = g.source_[x] == g.target_[y];
            const std::size_t z = comp(x, y);
            if (composable != (z != npos))
                throw InvalidGroupoid("composition: " + labels[x] + " " + labels[y] +
                                      (composable ? " must be defined" : " must be undefined"));
            if (z != npos && (g.target_[z] != g.target_[x] || g.source_[z] != g.source_[y]))
                throw InvalidGroupoid("composition: " + labels[x] + " " + labels[y] +
                                      " has wrong source or target");
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t xy = comp(x, y);
            if (xy == npos)
                continue;
            for (std::size_t z = 0; z < n; ++z) {
                const std::size_t yz = comp(y, z);
                if (yz == npos)
                    continue;
                if (comp(xy, z) != comp(x, yz))
                    throw InvalidGroupoid("associativity: (" + labels[x] + " " + labels[y] + ") " +
                                          labels[z]);
            }
        }
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t xi = inverse[x];
        if (xi >= n || comp(x, xi) != g.target_[x] || comp(xi, x) != g.source_[x])
            throw InvalidGroupoid("inverse: " + labels[x]);
    }
    g.labels_ = std::move(labels);
    g.units_ = std::move(units);
    g.inverse_ = std::move(inverse);
    g.table_ = std::move(table);
    return g;
}

Groupoid groupoid_from_tables(const GroupoidTables& data)
{
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < data.morphisms.size(); ++i)
        if (!index.emplace(data.morphisms[i], i).second)
            throw InvalidGroupoid("labels: duplicate morphism " + data.morphisms[i]);
    auto lookup = [&](const std::string& s, const char* where) {
        auto it = index.find(s);
        if (it == index.end())
            throw InvalidGroupoid(std::string(where) + ": unknown morphism " + s);
        return it->second;
    };
    const std::size_t n = data.morphisms.size();
    std::vector<std::size_t> units;
    for (const auto& u : data.units)
        units.push_back(lookup(u, "units"));
    std::vector<std::size_t> table(n * n, Groupoid::npos);
    for (const auto& [x, y, z] : data.compose) {
        std::size_t& slot = table[lookup(x, "composition") * n + lookup(y, "composition")];
        if (slot != Groupoid::npos)
            throw InvalidGroupoid("composition: " + x + " " + y + " given twice");
        slot = lookup(z, "composition");
    }
    std::vector<std::size_t> inverse(n, Groupoid::npos);
    for (const auto& [x, y] : data.inverse)
        inverse[lookup(x, "inverse")] = lookup(y, "inverse");
    for (std::size_t x = 0; x < n; ++x)
        if (inverse[x] == Groupoid::npos)
            throw InvalidGroupoid("inverse: missing for " + data.morphisms[x]);
    return Groupoid::from_parts(data.morphisms, std::move(units), std::move(table),
                                std::move(inverse));
}

Groupoid pair_groupoid(std::size_t n)
{
    if (n == 0)
        throw InvalidArgument("pair_groupoid: n must be >= 1");
    std::vector<std::string> labels;
    std::vector<std::size_t> units, inverse, table(n * n * n * n, Groupoid::npos);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            labels.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            inverse.push_back(j * n + i);
            for (std::size_t k = 0; k < n; ++k)
                table[(i * n + j) * n * n + j * n + k] = i * n + k;
        }
    for (std::size_t i = 0; i < n; ++i)
        units.push_back(i * n + i);
    return Groupoid::from_parts(std::move(labels), std::move(units), std::move(table),
                                std::move(inverse));
}

Groupoid cyclic_group(std::size_t n)
{
    if (n == 0)
        throw InvalidArgument("cyclic_group: n must be >= 1");
    std::vector<std::string> labels;
    std::vector<std::size_t> inverse, table(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        labels.push_back("g^" + std::to_string(k));
        inverse.push_back((n - k) % n);
        for (std::size_t l = 0; l < n; ++l)
            table[k * n + l] = (k + l) % n;
    }
    return Groupoid::from_parts(std::move(labels), {0}, std::move(table), std::move(inverse));
}

Groupoid disjoint_union(const Groupoid& a, const Groupoid& b)
{
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<std::string> labels;
    std::vector<std::size_t> units, inverse, table(n * n, Groupoid::npos);
    for (std::size_t x = 0; x < na; ++x)
        labels.push_back(a.label(x) + "@1");
    for (std::size_t x = 0; x < nb; ++x)
        labels.push_back(b.label(x) + "@2");
    for (std::size_t u : a.units())
        units.push_back(u);
    for (std::size_t u : b.units())
        units.push_back(na + u);
    for (std::size_t x = 0; x < na; ++x) {
        inverse.push_back(a.inverse(x));
        for (std::size_t y = 0; y < na; ++y)
            table[x * n + y] = a.compose(x, y);
    }
    for (std::size_t x = 0; x < nb; ++x) {
        inverse.push_back(na + b.inverse(x));
        for (std::size_t y = 0; y < nb; ++y) {
            const std::size_t z = b.compose(x, y);
            table[(na + x) * n + na + y] = z == Groupoid::npos ? z : na + z;
        }
    }
    return Groupoid::from_parts(std::move(labels), std::move(units), std::move(table),
                                std::move(inverse));
}

} // namespace wka
