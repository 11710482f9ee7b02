#pragma once

#include <vector>

#include "hahn/series.hpp"

namespace hahn {

/// Dense polynomial with coefficients of type C, index = degree.
template <class C>
struct Polynomial {
    std::vector<C> coeffs;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }

    template <class X>
    X eval(const X& x) const {
        X acc = x; // overwritten below; requires nonempty coeffs
        bool first = true;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            if (first) {
                acc = coeff_cast<X>(*it);
                first = false;
            } else {
                acc = acc * x + coeff_cast<X>(*it);
            }
        }
        return acc;
    }

    Polynomial derivative() const {
        Polynomial d;
        for (std::size_t i = 1; i < coeffs.size(); ++i)
            d.coeffs.push_back(scale_coeff(coeffs[i], static_cast<long>(i)));
        return d;
    }

private:
    template <class X>
    static X coeff_cast(const C& c) {
        if constexpr (std::is_same_v<X, C>)
            return c;
        else
            return X(c);
    }
    static C scale_coeff(const C& c, long k) {
        if constexpr (std::is_same_v<C, Rat>)
            return c * Rat(k);
        else
            return c.scaled(Rat(k));
    }
};

using RatPolynomial = Polynomial<Rat>;
using SeriesPolynomial = Polynomial<SeriesElement>;
using RingPolynomial = Polynomial<GroupRingElement>;

/// Coefficientwise residue; requires every coefficient in the valuation ring.
RatPolynomial residue_poly(const SeriesPolynomial& f);
RatPolynomial residue_poly(const RingPolynomial& f);

/// fbar(r) = 0 and fbar'(r) != 0, in exact rational arithmetic.
bool simple_root_check(const RatPolynomial& fbar, const Rat& r);

SeriesPolynomial to_series_poly(const RingPolynomial& f);

} // namespace hahn
