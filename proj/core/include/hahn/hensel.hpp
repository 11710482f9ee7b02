#pragma once

#include <optional>
#include <vector>

#include "hahn/laurent.hpp"
#include "hahn/polynomial.hpp"

namespace hahn {

/// Result of lifting a simple residue root by Newton iteration. The residual
/// valuation is a certified lower bound for v(f(root)); nullopt means f(root)
/// vanished exactly.
struct LiftResult {
    SeriesElement root;
    std::optional<GroupElement> residual_valuation; // nullopt = +infinity
    int steps = 0;
    /// v(f(y_k)) after each accepted Newton step (exact values while nonzero).
    std::vector<GroupElement> step_residuals;
};

/// Newton-lift the simple residue root r0 of f until v(f(y)) >= target_cutoff.
/// Requires every coefficient in the valuation ring at sufficient precision
/// and simple_root_check(residue_poly(f), r0).
LiftResult hensel_lift(const SeriesPolynomial& f, const Rat& r0,
                       const GroupElement& target_cutoff);

/// Generalized lift from an arbitrary initial approximation y0 with
/// v(f(y0)) > 0 and v(f'(y0)) = 0; used stagewise by the tower construction.
LiftResult newton_lift(const SeriesPolynomial& f, const SeriesElement& y0,
                       const GroupElement& target_cutoff);

/// Eisenstein data for a monic polynomial over the group ring: the prime
/// element divides every non-leading coefficient and its square does not
/// divide the constant term.
struct EisensteinCertificate {
    RingPolynomial poly;
    GroupRingElement prime_elem;
    PrimeCertificate prime_cert;
    std::vector<bool> divides_non_leading;
    bool square_free_constant = false;
};

Checked<EisensteinCertificate> eisenstein_check(const RingPolynomial& g,
                                                const GroupRingElement& a);

} // namespace hahn
