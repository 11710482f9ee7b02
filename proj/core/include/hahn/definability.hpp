#pragma once

#include <optional>

#include "hahn/hensel.hpp"
#include "hahn/witness.hpp"

namespace hahn {

/// Certified parameter for the one-parameter valuation-ring definition over
/// k((G)): the valuation eps_value of the parameter is not n-divisible while
/// eps_value/n is a left-sided limit point of G in its divisible hull. When
/// only right-sided approximation is available the parameter is replaced by
/// its inverse and `inverted` is set.
struct ParameterCertificate {
    ShapePtr group;
    long n = 0;
    GroupElement requested_value;
    bool inverted = false;
    GroupElement eps_value; // valuation of the effective parameter
    SeriesElement epsilon;  // monomial t^{eps_value} by default
    LimitPointWitness witness;
    long margin_steps = 4;

    /// Working cutoff for witnesses attached to a quantity of valuation v:
    /// (1 + margin_steps) * v, reachable from v by Newton doubling.
    GroupElement working_cutoff(const GroupElement& v) const {
        return v.scaled(Rat(1 + margin_steps));
    }
};

ParameterCertificate certify_parameter(const ShapePtr& group,
                                       const GroupElement& eps_value, long n,
                                       long margin_steps = 4);

/// Case analysis recorded when the membership formula must fail: the would-be
/// witness forces eps_value into nG, contradicting the certificate.
struct PhiObstruction {
    int case_tag = 0; // 2: v(eps x^n) = 0, 3: v(eps x^n) < 0
    GroupElement v_eps;
    GroupElement v_x;
    GroupElement v_w; // v(eps x^n) = v_eps + n v_x
    bool eps_value_divisible = false; // re-check of the certificate
};

struct PhiCertificate {
    SeriesElement x;
    bool verdict = false;
    std::optional<LiftResult> witness;       // solves y^n - y^{n-1} = eps x^n
    std::optional<PhiObstruction> obstruction;
    std::optional<GroupElement> v_w;         // nullopt when x = 0 (v = +inf)
};

/// Membership of x in {v(eps x^n) > 0}, decided by the solvability of
/// y^n - y^{n-1} = eps x^n with a lifted witness on the positive side and a
/// value-group obstruction on the negative side.
PhiCertificate decide_phi(const SeriesElement& x, const ParameterCertificate& cert);

/// Membership of w in eps * (n-th powers) with positive valuation; the witness
/// x satisfies w = eps x^n up to the working cutoff.
struct PsiMembership {
    bool member = false;
    std::optional<SeriesElement> witness_x;
    std::string reason; // set when not a member
};
PsiMembership psi_member(const SeriesElement& w, const ParameterCertificate& cert);

/// Data certifying a in the image set z (y^n - y^{n-1}) = x^n - x^{n-1} with
/// z in the Psi set: all three valuation inequalities are exact in the value
/// group even though the series are truncated.
struct OmegaCertificate {
    SeriesElement a;
    LiftResult x;       // x^n - x^{n-1} = a
    SeriesElement b;    // monomial with v(eps)/n - v(a)/n < v(b) < v(eps)/n
    SeriesElement z;    // eps * b^{-n}
    LiftResult y;       // y^n - y^{n-1} = a/z
    GroupElement v_a;
    GroupElement v_z;
    GroupElement check_cutoff; // identity verified below this cutoff
};

OmegaCertificate omega_witness(const SeriesElement& a,
                               const ParameterCertificate& cert);

/// Re-check a certificate from its payload alone.
Checked<bool> verify_omega_certificate(const OmegaCertificate& c,
                                       const ParameterCertificate& cert);

/// Forward direction of the image-set characterization: a presented triple
/// (x, z, y) is validated (identity to cutoff, z in the Psi set) and then
/// v(x^n - x^{n-1}) > 0 is asserted and checked.
struct OmegaTriple {
    SeriesElement x;
    SeriesElement z;
    SeriesElement y;
};
Checked<bool> omega_member_forward(const OmegaTriple& triple,
                                   const ParameterCertificate& cert);
/// Bare-series shortcut: membership is equivalent to lying in the maximal
/// ideal.
bool omega_member_forward(const SeriesElement& u, const ParameterCertificate& cert);

/// Valuation-ring membership with a sampled check of the defining property
/// (x stabilizes the maximal ideal under multiplication).
struct OvReport {
    bool member = false;
    int samples_checked = 0;
    int samples_agreeing = 0;
    std::optional<SeriesElement> failing_u;
    unsigned long seed = 0;
};
OvReport ov_member(const SeriesElement& x, const ParameterCertificate& cert,
                   int sample_budget, unsigned long seed);

} // namespace hahn
