#include "hahn/laurent.hpp"

#include <algorithm>
#include <set>

#include "hahn/errors.hpp"

namespace hahn {

namespace {

/// Dense rational coordinate vector of g over the given slots.
std::vector<Rat> coordinate_vector(const GroupElement& g,
                                   const std::vector<Idx>& slots, bool dist_slot) {
    std::vector<Rat> v;
    v.reserve(slots.size() + (dist_slot ? 1 : 0));
    for (Idx i : slots) {
        auto it = g.entries().find(i);
        v.push_back(it == g.entries().end() ? Rat(0) : it->second);
    }
    if (dist_slot) v.push_back(g.dist_multiple());
    return v;
}

/// Exact rational row-reduction rank.
long rational_rank(std::vector<std::vector<Rat>> m) {
    long rank = 0;
    std::size_t cols = m.empty() ? 0 : m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col] / m[row][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        ++rank;
        ++row;
    }
    return rank;
}

} // namespace

SubgroupBasis subgroup_basis(const std::vector<GroupElement>& generators) {
    SubgroupBasis basis;
    if (generators.empty()) return basis;
    const ShapePtr& shape = generators.front().shape();

    std::set<Idx> idx;
    Int lcm(1);
    for (const auto& g : generators) {
        if (*g.shape() != *shape)
            throw ShapeMismatchError("subgroup basis over mixed shapes");
        for (const auto& [i, c] : g.entries()) {
            idx.insert(i);
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        if (g.dist_multiple() != 0) {
            basis.has_dist_slot = true;
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                    g.dist_multiple().get_den().get_mpz_t());
        }
    }
    basis.coord_indices.assign(idx.begin(), idx.end());
    basis.denominator = lcm;

    std::size_t cols = basis.coord_indices.size() + (basis.has_dist_slot ? 1 : 0);
    std::vector<std::vector<Int>> rows;
    for (const auto& g : generators) {
        auto v = coordinate_vector(g, basis.coord_indices, basis.has_dist_slot);
        std::vector<Int> r(cols);
        bool nonzero = false;
        for (std::size_t j = 0; j < cols; ++j) {
            Rat scaled = v[j] * Rat(lcm);
            r[j] = scaled.get_num(); // integral by construction
            if (r[j] != 0) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(r));
    }

    // Integer row echelon form via repeated remainder steps; the nonzero rows
    // form a basis of the row lattice.
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows.size(); ++col) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = row; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() ||
                    cmp(abs(rows[i][col]), abs(rows[best][col])) < 0)
                    best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[row], rows[best]);
            bool cleared = true;
            for (std::size_t i = row + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                           rows[row][col].get_mpz_t());
                for (std::size_t j = 0; j < cols; ++j)
                    rows[i][j] -= q * rows[row][j];
                if (rows[i][col] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (rows[row][col] != 0) {
            if (rows[row][col] < 0)
                for (auto& x : rows[row]) x = -x;
            basis.pivots.push_back(col);
            ++row;
        }
    }
    rows.resize(row);
    basis.rows = std::move(rows);
    return basis;
}

std::vector<Int> SubgroupBasis::coordinates(const GroupElement& g) const {
    auto v = coordinate_vector(g, coord_indices, has_dist_slot);
    std::size_t cols = coord_indices.size() + (has_dist_slot ? 1 : 0);
    std::vector<Int> target(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        Rat scaled = v[j] * Rat(denominator);
        if (!is_integer(scaled))
            throw DomainError("element outside the scaled lattice");
        target[j] = scaled.get_num();
    }
    std::vector<Int> coords(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t p = pivots[r];
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), target[p].get_mpz_t(),
                    rows[r][p].get_mpz_t());
        if (rem != 0)
            throw DomainError("element is not in the generated subgroup");
        coords[r] = q;
        for (std::size_t j = 0; j < cols; ++j) target[j] -= q * rows[r][j];
    }
    for (const auto& x : target)
        if (x != 0) throw DomainError("element is not in the generated subgroup");
    return coords;
}

GroupElement SubgroupBasis::element_from_coordinates(
    const ShapePtr& shape, const std::vector<Int>& coords) const {
    std::size_t cols = coord_indices.size() + (has_dist_slot ? 1 : 0);
    std::vector<Rat> acc(cols, Rat(0));
    for (std::size_t r = 0; r < coords.size(); ++r)
        for (std::size_t j = 0; j < cols; ++j)
            acc[j] += Rat(coords[r]) * Rat(rows[r][j]);
    std::map<Idx, Rat> entries;
    for (std::size_t j = 0; j < coord_indices.size(); ++j) {
        Rat v = acc[j] / Rat(denominator);
        if (v != 0) entries[coord_indices[j]] = v;
    }
    Rat dist(0);
    if (has_dist_slot) dist = acc.back() / Rat(denominator);
    return GroupElement::make(shape, std::move(entries), dist);
}

bool is_unit(const GroupRingElement& r) { return r.term_count() == 1; }

Checked<PrimeCertificate> prime_certificate(const GroupRingElement& r) {
    GroupElement zero_g = GroupElement::zero(r.shape());
    if (!r.terms().count(zero_g))
        return {std::nullopt, "support does not contain the group identity"};
    std::vector<GroupElement> supp;
    for (const auto& [g, c] : r.terms())
        if (!g.is_zero()) supp.push_back(g);
    if (supp.size() < 2)
        return {std::nullopt, "support has fewer than two nonzero points"};

    std::set<Idx> idx;
    bool dist_slot = false;
    for (const auto& g : supp) {
        for (const auto& [i, c] : g.entries()) idx.insert(i);
        if (g.dist_multiple() != 0) dist_slot = true;
    }
    std::vector<Idx> slots(idx.begin(), idx.end());
    std::vector<std::vector<Rat>> m;
    for (const auto& g : supp) m.push_back(coordinate_vector(g, slots, dist_slot));
    long rank = rational_rank(std::move(m));
    if (rank != static_cast<long>(supp.size()))
        return {std::nullopt,
                "nonzero support points are linearly dependent over Q (rank " +
                    std::to_string(rank) + " of " + std::to_string(supp.size()) + ")"};
    return {PrimeCertificate{r, std::move(supp), rank}, ""};
}

// ---------------------------------------------------------------------------
// Laurent division
// ---------------------------------------------------------------------------

namespace {

using Expo = std::vector<long>;
using LaurentPoly = std::map<Expo, Rat>;

long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw DomainError("Laurent exponent out of range");
    return z.get_si();
}

/// Shift all exponents so each variable's minimum is zero; returns the shift.
Expo min_shift(LaurentPoly& p, std::size_t vars) {
    Expo shift(vars, 0);
    bool first = true;
    for (const auto& [e, c] : p) {
        for (std::size_t j = 0; j < vars; ++j)
            shift[j] = first ? e[j] : std::min(shift[j], e[j]);
        first = false;
    }
    if (first) return shift;
    LaurentPoly out;
    for (const auto& [e, c] : p) {
        Expo f = e;
        for (std::size_t j = 0; j < vars; ++j) f[j] -= shift[j];
        out.emplace(std::move(f), c);
    }
    p = std::move(out);
    return shift;
}

bool expo_divides(const Expo& d, const Expo& r) {
    for (std::size_t j = 0; j < d.size(); ++j)
        if (d[j] > r[j]) return false;
    return true;
}

/// Single-divisor multivariate polynomial division; nullopt when not exact.
/// With one divisor, exact divisibility forces every intermediate leading
/// term to be divisible, so the first failure is conclusive.
std::optional<LaurentPoly> poly_divide(const LaurentPoly& d, LaurentPoly r) {
    if (d.empty()) throw DomainError("division by zero polynomial");
    LaurentPoly q;
    const auto& [de, dc] = *d.rbegin();
    while (!r.empty()) {
        auto [re, rc] = *r.rbegin();
        if (!expo_divides(de, re)) return std::nullopt;
        Expo te = re;
        for (std::size_t j = 0; j < te.size(); ++j) te[j] -= de[j];
        Rat tc = rc / dc;
        q[te] += tc;
        for (const auto& [e, c] : d) {
            Expo f = e;
            for (std::size_t j = 0; j < f.size(); ++j) f[j] += te[j];
            auto it = r.find(f);
            Rat nv = (it == r.end() ? Rat(0) : it->second) - tc * c;
            if (nv == 0) {
                if (it != r.end()) r.erase(it);
            } else if (it == r.end()) {
                r.emplace(std::move(f), std::move(nv));
            } else {
                it->second = std::move(nv);
            }
        }
    }
    return q;
}

} // namespace

std::optional<GroupRingElement> ring_divides(const GroupRingElement& d,
                                             const GroupRingElement& r) {
    if (d.is_zero()) throw DomainError("ring division by zero");
    if (r.is_zero()) return GroupRingElement::zero(r.shape());
    if (*d.shape() != *r.shape())
        throw ShapeMismatchError("ring division across shapes");

    std::vector<GroupElement> gens;
    for (const auto& [g, c] : d.terms()) gens.push_back(g);
    for (const auto& [g, c] : r.terms()) gens.push_back(g);
    SubgroupBasis basis = subgroup_basis(gens);
    std::size_t vars = basis.rank();

    auto to_laurent = [&](const GroupRingElement& x) {
        LaurentPoly p;
        for (const auto& [g, c] : x.terms()) {
            auto coords = basis.coordinates(g);
            Expo e(vars);
            for (std::size_t j = 0; j < vars; ++j) e[j] = to_long(coords[j]);
            p.emplace(std::move(e), c);
        }
        return p;
    };

    LaurentPoly dp = to_laurent(d);
    LaurentPoly rp = to_laurent(r);
    Expo ds = min_shift(dp, vars);
    Expo rs = min_shift(rp, vars);

    auto qp = poly_divide(dp, std::move(rp));
    if (!qp) return std::nullopt;

    TermMap qterms;
    for (const auto& [e, c] : *qp) {
        std::vector<Int> coords(vars);
        for (std::size_t j = 0; j < vars; ++j) coords[j] = Int(e[j] + rs[j] - ds[j]);
        GroupElement g = basis.element_from_coordinates(r.shape(), coords);
        qterms.emplace(std::move(g), c);
    }
    GroupRingElement q = GroupRingElement::make(r.shape(), std::move(qterms));
    if (!(d * q == r)) throw Error("laurent division produced a bad quotient");
    return q;
}

GreedyDivision ring_divides_greedy(const GroupRingElement& d,
                                   const GroupRingElement& r,
                                   std::size_t max_steps) {
    if (d.is_zero()) throw DomainError("ring division by zero");
    if (*d.shape() != *r.shape())
        throw ShapeMismatchError("ring division across shapes");
    if (r.is_zero()) return {Verdict::True, GroupRingElement::zero(r.shape())};

    const GroupElement dmin = d.terms().begin()->first;
    const GroupElement dmax = d.terms().rbegin()->first;
    const GroupElement qmax_bound = r.terms().rbegin()->first - dmax;
    const Rat dlead = d.terms().begin()->second;

    GroupRingElement rem = r;
    TermMap qterms;
    for (std::size_t step = 0; step < max_steps; ++step) {
        if (rem.is_zero())
            return {Verdict::True, GroupRingElement::make(r.shape(), std::move(qterms))};
        const auto& [rmin, rlead] = *rem.terms().begin();
        GroupElement tg = rmin - dmin;
        if (tg > qmax_bound) return {Verdict::False, std::nullopt};
        Rat tc = rlead / dlead;
        qterms.emplace(tg, tc);
        rem = rem - d * GroupRingElement::monomial(std::move(tg), tc);
    }
    return {Verdict::Inconclusive, std::nullopt};
}

} // namespace hahn
