#include "hahn/hensel.hpp"

#include "hahn/errors.hpp"

namespace hahn {

namespace {

constexpr int kMaxNewtonSteps = 64;

void check_poly(const SeriesPolynomial& f) {
    if (f.coeffs.size() < 2) throw DomainError("lift requires degree >= 1");
    const ShapePtr& shape = f.coeffs.front().shape();
    for (const auto& c : f.coeffs)
        if (*c.shape() != *shape)
            throw ShapeMismatchError("polynomial coefficients over mixed shapes");
    if (f.coeffs.back().is_exact_zero())
        throw DomainError("leading coefficient is zero");
}

} // namespace

RatPolynomial residue_poly(const SeriesPolynomial& f) {
    RatPolynomial out;
    for (const auto& c : f.coeffs) out.coeffs.push_back(c.residue());
    return out;
}

RatPolynomial residue_poly(const RingPolynomial& f) {
    RatPolynomial out;
    for (const auto& c : f.coeffs) out.coeffs.push_back(c.residue());
    return out;
}

bool simple_root_check(const RatPolynomial& fbar, const Rat& r) {
    if (fbar.coeffs.empty()) return false;
    return fbar.eval(r) == 0 && fbar.derivative().eval(r) != 0;
}

SeriesPolynomial to_series_poly(const RingPolynomial& f) {
    SeriesPolynomial out;
    for (const auto& c : f.coeffs) out.coeffs.push_back(SeriesElement::from_ring(c));
    return out;
}

LiftResult newton_lift(const SeriesPolynomial& f, const SeriesElement& y0,
                       const GroupElement& target_cutoff) {
    check_poly(f);
    const ShapePtr& shape = f.coeffs.front().shape();
    if (target_cutoff.sign() <= 0)
        throw DomainError("lift target cutoff must be positive");

    // Coefficients must be known at least up to the target.
    for (const auto& c : f.coeffs) {
        if (c.cutoff() && *c.cutoff() < target_cutoff)
            throw PrecisionError("coefficient cutoff below the lift target");
        auto v = c.valuation_lower_bound();
        if (v && v->sign() < 0)
            throw DomainError("coefficient outside the valuation ring");
    }

    SeriesPolynomial fprime = f.derivative();
    SeriesElement y = y0;
    std::vector<GroupElement> residuals;

    for (int steps = 0; steps <= kMaxNewtonSteps; ++steps) {
        SeriesElement fy = f.eval(y).truncated(target_cutoff);
        if (fy.is_exact_zero())
            return LiftResult{y, std::nullopt, steps, std::move(residuals)};
        if (valuation_at_least(fy, target_cutoff)) {
            GroupElement res_val = fy.terms().empty() ? *fy.cutoff() : *fy.valuation();
            return LiftResult{y, std::move(res_val), steps, std::move(residuals)};
        }
        GroupElement vfy = *fy.valuation();
        if (vfy.sign() <= 0)
            throw DomainError("initial approximation is not a residue root");
        residuals.push_back(vfy);

        SeriesElement fpy = fprime.eval(y);
        auto vfp = fpy.valuation();
        if (!vfp || vfp->sign() != 0)
            throw DomainError("residue root is not simple at the current "
                              "approximation");
        // delta must be accurate below the target; its valuation equals v(f(y)).
        SeriesElement inv = series_invert(fpy, target_cutoff - vfy);
        SeriesElement delta = (fy * inv).truncated(target_cutoff);
        y = (y - delta).truncated(target_cutoff);
    }
    throw PrecisionError("newton iteration exceeded the step budget");
}

LiftResult hensel_lift(const SeriesPolynomial& f, const Rat& r0,
                       const GroupElement& target_cutoff) {
    check_poly(f);
    RatPolynomial fbar = residue_poly(f);
    if (!simple_root_check(fbar, r0))
        throw DomainError("residue polynomial has no simple root at " +
                          to_string(r0));
    SeriesElement y0 = SeriesElement::constant(f.coeffs.front().shape(), r0);
    LiftResult res = newton_lift(f, y0, target_cutoff);
    if (res.root.residue() != r0)
        throw Error("lifted root drifted from its residue");
    return res;
}

Checked<EisensteinCertificate> eisenstein_check(const RingPolynomial& g,
                                                const GroupRingElement& a) {
    if (g.coeffs.size() < 2)
        return {std::nullopt, "polynomial must have degree >= 1"};
    const GroupRingElement& lead = g.coeffs.back();
    GroupRingElement one = GroupRingElement::constant(a.shape(), Rat(1));
    if (!(lead == one))
        return {std::nullopt, "polynomial is not monic"};

    auto prime = prime_certificate(a);
    if (!prime)
        return {std::nullopt, "prime certificate rejected: " + prime.reason};

    std::vector<bool> divides;
    for (std::size_t i = 0; i + 1 < g.coeffs.size(); ++i) {
        bool ok = ring_divides(a, g.coeffs[i]).has_value();
        divides.push_back(ok);
        if (!ok)
            return {std::nullopt, "prime does not divide the coefficient of T^" +
                                      std::to_string(i)};
    }
    bool square_free = !ring_divides(a * a, g.coeffs.front()).has_value();
    if (!square_free)
        return {std::nullopt, "the square of the prime divides the constant term"};
    return {EisensteinCertificate{g, a, *prime, std::move(divides), square_free}, ""};
}

} // namespace hahn
