#pragma once

#include <random>

#include "hahn/series.hpp"

namespace hahn {

/// Deterministic sampler for group elements and series. All randomized checks
/// record the seed they were run with.
class Sampler {
public:
    explicit Sampler(unsigned long seed) : rng_(seed) {}

    std::mt19937_64& engine() { return rng_; }

    long uniform(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng_);
    }

    Rat coefficient(Scalar s, long bound = 8) {
        long num = nonzero(bound);
        switch (s) {
            case Scalar::Int: return Rat(num);
            case Scalar::Dyadic: return make_rat(num, 1L << uniform(0, 4));
            case Scalar::Rat: return make_rat(num, uniform(1, bound));
        }
        return Rat(num);
    }

    /// Group element with bounded support inside the shape's sampling window.
    GroupElement group_element(const ShapePtr& shape, int max_support = 5,
                               long bound = 8) {
        std::map<Idx, Rat> entries;
        auto [lo, hi] = window(*shape);
        int support = static_cast<int>(uniform(0, max_support));
        for (int t = 0; t < support; ++t) {
            Idx i = static_cast<Idx>(uniform(lo, hi));
            entries[i] = coefficient(shape->scalar_at(i), bound);
        }
        Rat dist(0);
        if (shape->is_extended() && uniform(0, 2) == 0) dist = Rat(nonzero(2));
        return GroupElement::make(shape, std::move(entries), dist);
    }

    GroupElement nonzero_group_element(const ShapePtr& shape, int max_support = 5,
                                       long bound = 8) {
        for (int tries = 0; tries < 64; ++tries) {
            GroupElement g = group_element(shape, max_support, bound);
            if (!g.is_zero()) return g;
        }
        return GroupElement::unit(shape, window(*shape).first, Rat(1));
    }

    GroupElement positive_group_element(const ShapePtr& shape, int max_support = 5,
                                        long bound = 8) {
        GroupElement g = nonzero_group_element(shape, max_support, bound);
        return g.sign() > 0 ? g : g.negated();
    }

    /// Series t^{lead} * (1 + smaller terms); the valuation is exactly `lead`.
    SeriesElement series_with_valuation(const GroupElement& lead, int extra_terms = 2,
                                        long bound = 8) {
        const ShapePtr& shape = lead.shape();
        TermMap terms;
        terms.emplace(lead, coefficient(Scalar::Int, bound));
        for (int t = 0; t < extra_terms; ++t) {
            GroupElement delta = positive_group_element(shape, 3, bound);
            terms.emplace(lead + delta, coefficient(Scalar::Int, bound));
        }
        return SeriesElement::make(shape, std::move(terms));
    }

    /// Random series with mixed-sign valuation, support <= 1 + extra_terms.
    SeriesElement series(const ShapePtr& shape, int extra_terms = 4, long bound = 8) {
        GroupElement lead = nonzero_group_element(shape, 4, bound);
        return series_with_valuation(lead, extra_terms, bound);
    }

    /// Series with strictly positive valuation (maximal-ideal member).
    SeriesElement maximal_ideal_series(const ShapePtr& shape, int extra_terms = 2,
                                       long bound = 8) {
        GroupElement lead = positive_group_element(shape, 4, bound);
        return series_with_valuation(lead, extra_terms, bound);
    }

private:
    long nonzero(long bound) {
        long v = uniform(-bound, bound - 1);
        return v >= 0 ? v + 1 : v;
    }

    static std::pair<Idx, Idx> window(const GroupShape& shape) {
        const IndexRange& r = shape.index_range();
        Idx lo = r.lo ? *r.lo : (r.hi ? *r.hi - 7 : -4);
        Idx hi = r.hi ? *r.hi : (r.lo ? *r.lo + 7 : 4);
        if (hi - lo > 7) hi = lo + 7;
        return {lo, hi};
    }

    std::mt19937_64 rng_;
};

} // namespace hahn
