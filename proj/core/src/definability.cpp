#include "hahn/definability.hpp"

#include "hahn/errors.hpp"
#include "hahn/rng.hpp"

namespace hahn {

namespace {

bool is_counterhong_shape(const GroupShape& s) {
    return s.kind() == ShapeKind::ExtendedHahnSum && s.scalar_at(0) == Scalar::Int &&
           s.index_range().lo == 0 && s.distinguished_coeff() == 2;
}

bool is_dyadic_tail_shape(const GroupShape& s) {
    return s.kind() == ShapeKind::HahnSum && s.scalar_at(0) == Scalar::Dyadic &&
           !s.index_range().lo && s.index_range().hi == 0;
}

/// Left-sided witness for `point` over the extended sum: point must differ
/// from the canonical half-distinguished limit point by a group element.
std::optional<LimitPointWitness> ext_sum_witness(const ShapePtr& shape,
                                                 const GroupElement& point) {
    LimitPointWitness base = limit_point_witness(shape);
    GroupElement delta = point - base.limit_point;
    if (!delta.in_group()) return std::nullopt;
    auto gen = base.generator;
    return LimitPointWitness{
        point,
        [delta, gen](const GroupElement& b) { return delta + gen(b); },
        base.method + "+translation"};
}

/// Left-sided witness for `point` over the dyadic tail shape: every coordinate
/// below index 0 must already be dyadic, with the whole defect at index 0.
std::optional<LimitPointWitness> dyadic_witness(const ShapePtr& shape,
                                                const GroupElement& point, long n) {
    std::map<Idx, Rat> exact;
    Rat rho(0);
    for (const auto& [i, c] : point.entries()) {
        if (i == 0) {
            rho = c;
        } else {
            if (!is_dyadic(c)) return std::nullopt;
            exact[i] = c;
        }
    }
    if (is_dyadic(rho)) return std::nullopt;
    GroupElement exact_part = GroupElement::make(shape, std::move(exact));
    ShapePtr s = shape;
    return LimitPointWitness{
        point,
        [s, exact_part, rho, n](const GroupElement& b) {
            return dyadic_left_approximant(s, exact_part, rho, n, b);
        },
        "dyadic-truncation"};
}

std::vector<GroupElement> validation_bounds(const ShapePtr& shape) {
    std::vector<GroupElement> out;
    if (is_counterhong_shape(*shape)) {
        out.push_back(GroupElement::unit(shape, 0, Rat(1)));
        out.push_back(GroupElement::unit(shape, 2, Rat(1)));
        out.push_back(GroupElement::distinguished(shape, Rat(1)));
        out.push_back(GroupElement::unit(shape, 1, make_rat(1, 2)));
    } else {
        out.push_back(GroupElement::unit(shape, 0, Rat(1)));
        out.push_back(GroupElement::unit(shape, 0, make_rat(1, 4)));
        out.push_back(GroupElement::unit(shape, -1, Rat(1)));
        out.push_back(GroupElement::unit(shape, 0, make_rat(3, 16)));
    }
    return out;
}

SeriesPolynomial membership_poly(const SeriesElement& rhs, long n) {
    // T^n - T^{n-1} - rhs
    const ShapePtr& shape = rhs.shape();
    SeriesPolynomial f;
    f.coeffs.push_back(rhs.negated());
    for (long i = 1; i < n - 1; ++i) f.coeffs.push_back(SeriesElement::zero(shape));
    f.coeffs.push_back(SeriesElement::constant(shape, Rat(-1)));
    f.coeffs.push_back(SeriesElement::constant(shape, Rat(1)));
    return f;
}

} // namespace

ParameterCertificate certify_parameter(const ShapePtr& group,
                                       const GroupElement& eps_value, long n,
                                       long margin_steps) {
    if (n < 2) throw DomainError("certify_parameter: n must be >= 2");
    if (margin_steps < 1) throw DomainError("certify_parameter: margin must be >= 1");
    if (is_n_divisible(eps_value, n))
        throw DomainError("certify_parameter: the valuation of the parameter is "
                          "n-divisible, the defining formula degenerates");

    Rat inv_n = make_rat(1, n);
    std::optional<LimitPointWitness> witness;
    bool inverted = false;

    auto resolve = [&](const GroupElement& point) -> std::optional<LimitPointWitness> {
        if (is_counterhong_shape(*group)) return ext_sum_witness(group, point);
        if (is_dyadic_tail_shape(*group)) return dyadic_witness(group, point, n);
        throw DomainError("certify_parameter: no witness procedure for shape " +
                          group->to_sexpr());
    };

    witness = resolve(eps_value.scaled(inv_n));
    if (!witness) {
        witness = resolve(eps_value.negated().scaled(inv_n));
        if (witness) inverted = true;
    }
    if (!witness)
        throw DomainError("certify_parameter: value/n admits no left-sided "
                          "limit-point witness over " + group->to_sexpr());

    GroupElement effective = inverted ? eps_value.negated() : eps_value;
    const GroupElement point = witness->limit_point;

    // Sanity pass: the generator must realize the strict sandwich for a few
    // canonical bounds.
    for (const GroupElement& b : validation_bounds(group)) {
        GroupElement g = witness->generator(b);
        if (!g.in_group()) throw Error("witness generator left the group");
        if (!(point - b < g && g < point))
            throw Error("witness generator violated the sandwich for bound " +
                        b.to_literal());
    }

    SeriesElement eps = SeriesElement::monomial(effective);
    return ParameterCertificate{group,    n,   eps_value,          inverted,
                                effective, eps, std::move(*witness), margin_steps};
}

PhiCertificate decide_phi(const SeriesElement& x, const ParameterCertificate& cert) {
    if (*x.shape() != *cert.group)
        throw ShapeMismatchError("decide_phi: series over a different group");
    if (x.is_exact_zero()) {
        // eps * 0 = 0 has valuation +infinity; y = 1 is an exact witness.
        SeriesElement one = SeriesElement::constant(x.shape(), Rat(1));
        return PhiCertificate{x, true, LiftResult{one, std::nullopt, 0, {}},
                              std::nullopt, std::nullopt};
    }
    SeriesElement w = cert.epsilon * x.pow(static_cast<unsigned long>(cert.n));
    GroupElement v_w = *w.valuation();
    GroupElement v_x = *x.valuation();
    int s = v_w.sign();
    if (s > 0) {
        SeriesPolynomial f = membership_poly(w, cert.n);
        LiftResult y = hensel_lift(f, Rat(1), cert.working_cutoff(v_w));
        return PhiCertificate{x, true, std::move(y), std::nullopt, std::move(v_w)};
    }
    PhiObstruction obs{s == 0 ? 2 : 3, cert.eps_value, std::move(v_x), v_w,
                       is_n_divisible(cert.eps_value, cert.n).has_value()};
    return PhiCertificate{x, false, std::nullopt, std::move(obs), std::move(v_w)};
}

PsiMembership psi_member(const SeriesElement& w, const ParameterCertificate& cert) {
    GroupElement v_w = *w.valuation();
    if (v_w.sign() <= 0)
        return {false, std::nullopt, "valuation is not positive"};
    auto gamma = is_n_divisible(v_w - cert.eps_value, cert.n);
    if (!gamma)
        return {false, std::nullopt,
                "v(w) - v(eps) is not n-divisible in the value group"};

    // Unit part u = w / (eps * t^{n gamma}) has valuation 0; its leading
    // coefficient must be an exact n-th power in the coefficient field.
    GroupElement shift = (cert.eps_value + gamma->scaled(Rat(cert.n))).negated();
    SeriesElement u = w * SeriesElement::monomial(shift);
    Rat u0 = u.leading_coefficient();
    auto r = exact_nth_root(u0, static_cast<unsigned long>(cert.n));
    if (!r)
        return {false, std::nullopt,
                "leading unit coefficient " + to_string(u0) +
                    " has no exact n-th root in the coefficient field"};

    SeriesElement x = SeriesElement::monomial(*gamma, *r);
    if (u.terms().size() > 1 || !u.is_exact()) {
        SeriesElement unit_norm = u.scaled(Rat(1) / u0);
        SeriesElement m = unit_norm - SeriesElement::constant(w.shape(), Rat(1));
        GroupElement v_m = *m.valuation();
        SeriesPolynomial f; // T^n - unit_norm
        f.coeffs.push_back(unit_norm.negated());
        for (long i = 1; i < cert.n; ++i)
            f.coeffs.push_back(SeriesElement::zero(w.shape()));
        f.coeffs.push_back(SeriesElement::constant(w.shape(), Rat(1)));
        LiftResult unit_root = hensel_lift(f, Rat(1), cert.working_cutoff(v_m));
        x = x * unit_root.root;
    }
    return {true, std::move(x), ""};
}

OmegaCertificate omega_witness(const SeriesElement& a,
                               const ParameterCertificate& cert) {
    GroupElement v_a = *a.valuation();
    if (v_a.sign() <= 0)
        throw DomainError("omega_witness: element is not in the maximal ideal");

    LiftResult x = hensel_lift(membership_poly(a, cert.n), Rat(1),
                               cert.working_cutoff(v_a));

    // Monomial b with v(eps)/n - v(a)/n < v(b) < v(eps)/n, from the limit-point
    // generator at bound v(a)/n; re-generated at tighter bounds if the strict
    // sandwich were ever violated.
    const GroupElement& p = cert.witness.limit_point;
    GroupElement h = v_a.scaled(make_rat(1, cert.n));
    GroupElement g_b = cert.witness.generator(h);
    for (int retry = 0; !(p - h < g_b && g_b < p); ++retry) {
        if (retry >= 3) throw Error("omega_witness: limit-point sandwich failed");
        h = h.scaled(make_rat(1, 2));
        g_b = cert.witness.generator(h);
    }

    SeriesElement b = SeriesElement::monomial(g_b);
    GroupElement v_z = cert.eps_value - g_b.scaled(Rat(cert.n));
    SeriesElement z = SeriesElement::monomial(v_z);
    if (!(v_z.sign() > 0 && v_z < v_a))
        throw Error("omega_witness: valuation inequalities failed for v(z) = " +
                    v_z.to_literal());

    SeriesElement a_over_z = a * series_invert(z);
    GroupElement v_aoz = v_a - v_z;
    LiftResult y = hensel_lift(membership_poly(a_over_z, cert.n), Rat(1),
                               cert.working_cutoff(v_aoz));

    // z (y^n - y^{n-1}) and x^n - x^{n-1} must agree below the weaker of the
    // two residual cutoffs.
    GroupElement wx = cert.working_cutoff(v_a);
    GroupElement wy = v_z + cert.working_cutoff(v_aoz);
    GroupElement check_cutoff = wx < wy ? wx : wy;
    unsigned long un = static_cast<unsigned long>(cert.n);
    SeriesElement lhs = z * (y.root.pow(un) - y.root.pow(un - 1));
    SeriesElement rhs = x.root.pow(un) - x.root.pow(un - 1);
    if (!valuation_at_least(lhs - rhs, check_cutoff))
        throw Error("omega_witness: certificate identity failed below cutoff");

    return OmegaCertificate{a,
                            std::move(x),
                            std::move(b),
                            std::move(z),
                            std::move(y),
                            std::move(v_a),
                            std::move(v_z),
                            std::move(check_cutoff)};
}

Checked<bool> verify_omega_certificate(const OmegaCertificate& c,
                                       const ParameterCertificate& cert) {
    unsigned long un = static_cast<unsigned long>(cert.n);
    try {
        GroupElement v_a = *c.a.valuation();
        if (v_a != c.v_a) return {std::nullopt, "recorded v(a) is wrong"};
        if (v_a.sign() <= 0) return {std::nullopt, "a is not in the maximal ideal"};

        GroupElement v_z = *c.z.valuation();
        if (v_z != c.v_z) return {std::nullopt, "recorded v(z) is wrong"};
        if (!(v_z.sign() > 0)) return {std::nullopt, "v(z) is not positive"};
        if (!(v_z < v_a)) return {std::nullopt, "v(z) is not below v(a)"};

        PsiMembership psi = psi_member(c.z, cert);
        if (!psi.member)
            return {std::nullopt, "z is outside the Psi set: " + psi.reason};

        SeriesElement fx =
            membership_poly(c.a, cert.n).eval(c.x.root).truncated(c.check_cutoff);
        if (!valuation_at_least(fx, c.check_cutoff))
            return {std::nullopt, "x does not solve its membership equation"};

        SeriesElement lhs = c.z * (c.y.root.pow(un) - c.y.root.pow(un - 1));
        SeriesElement rhs = c.x.root.pow(un) - c.x.root.pow(un - 1);
        if (!valuation_at_least(lhs - rhs, c.check_cutoff))
            return {std::nullopt, "certificate identity fails below the cutoff"};
    } catch (const Error& e) {
        return {std::nullopt, std::string("verification error: ") + e.what()};
    }
    return {true, ""};
}

Checked<bool> omega_member_forward(const OmegaTriple& triple,
                                   const ParameterCertificate& cert) {
    unsigned long un = static_cast<unsigned long>(cert.n);
    try {
        PsiMembership psi = psi_member(triple.z, cert);
        if (!psi.member)
            return {std::nullopt, "z is outside the Psi set: " + psi.reason};

        SeriesElement lhs = triple.z * (triple.y.pow(un) - triple.y.pow(un - 1));
        SeriesElement rhs = triple.x.pow(un) - triple.x.pow(un - 1);
        SeriesElement diff = lhs - rhs;
        if (!diff.terms().empty())
            return {std::nullopt, "identity fails at the current precision"};

        GroupElement v_u = *rhs.valuation();
        if (!(v_u.sign() > 0))
            return {std::nullopt, "derived element has non-positive valuation"};
    } catch (const Error& e) {
        return {std::nullopt, std::string("verification error: ") + e.what()};
    }
    return {true, ""};
}

bool omega_member_forward(const SeriesElement& u, const ParameterCertificate& cert) {
    (void)cert;
    if (u.is_exact_zero()) return false;
    return u.valuation()->sign() > 0;
}

OvReport ov_member(const SeriesElement& x, const ParameterCertificate& cert,
                   int sample_budget, unsigned long seed) {
    bool member = x.is_exact_zero() || x.valuation()->sign() >= 0;

    OvReport report{member, 0, 0, std::nullopt, seed};
    Sampler sampler(seed);
    for (int i = 0; i < sample_budget; ++i) {
        SeriesElement a = sampler.maximal_ideal_series(cert.group);
        omega_witness(a, cert); // certifies that a is in the image set
        SeriesElement xu = x * a;
        bool in_ideal = x.is_exact_zero() || omega_member_forward(xu, cert);
        ++report.samples_checked;
        if (in_ideal)
            ++report.samples_agreeing;
        else if (!report.failing_u)
            report.failing_u = a;
    }
    if (!member && !report.failing_u && !x.is_exact_zero()) {
        // Exhibit the canonical failure u = t^{-v(x)}.
        GroupElement g = x.valuation()->negated();
        SeriesElement u = SeriesElement::monomial(g);
        if (!omega_member_forward(x * u, cert)) report.failing_u = u;
    }
    return report;
}

} // namespace hahn
