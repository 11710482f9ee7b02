#pragma once

#include <vector>

#include "hahn/series.hpp"
#include "hahn/witness.hpp"

namespace hahn {

/// Certificate that a group-ring element with support {g_1..g_n, 0}, n >= 2,
/// has Q-linearly independent nonzero support points, hence is prime.
struct PrimeCertificate {
    GroupRingElement element;
    std::vector<GroupElement> nonzero_support;
    long rank = 0;
};

/// Basis of the finitely generated subgroup generated by a list of elements,
/// as integer row vectors over the coordinate slots (support indices plus the
/// distinguished-multiple slot for extended shapes), scaled by `denominator`.
struct SubgroupBasis {
    std::vector<Idx> coord_indices;
    bool has_dist_slot = false;
    Int denominator = 1;
    std::vector<std::vector<Int>> rows; // echelon basis of the scaled lattice
    std::vector<std::size_t> pivots;    // pivot column per row

    std::size_t rank() const { return rows.size(); }
    /// Integer coordinates of an element with respect to the basis.
    std::vector<Int> coordinates(const GroupElement& g) const;
    GroupElement element_from_coordinates(const ShapePtr& shape,
                                          const std::vector<Int>& coords) const;
};

SubgroupBasis subgroup_basis(const std::vector<GroupElement>& generators);

/// True iff r is a unit of the group ring (a single monomial).
bool is_unit(const GroupRingElement& r);

Checked<PrimeCertificate> prime_certificate(const GroupRingElement& r);

/// Exact divisibility in k[G], decided by transporting both elements along a
/// basis of the subgroup generated by their supports into a Laurent polynomial
/// ring and dividing there. Returns the quotient when d divides r.
std::optional<GroupRingElement> ring_divides(const GroupRingElement& d,
                                             const GroupRingElement& r);

/// Leading-term cancellation directly in the group ring; independent of the
/// Laurent route. Verdict::Inconclusive when the step budget runs out (dense
/// value groups admit unboundedly long non-divisible remainders).
struct GreedyDivision {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<GroupRingElement> quotient;
};
GreedyDivision ring_divides_greedy(const GroupRingElement& d,
                                   const GroupRingElement& r,
                                   std::size_t max_steps = 4096);

} // namespace hahn
