#pragma once

#include <map>
#include <optional>
#include <string>

#include "hahn/group.hpp"

namespace hahn {

using TermMap = std::map<GroupElement, Rat, GroupLess>;

/// Element of the group ring k[G] over the rationals: a finite formal sum of
/// monomials c * t^g with exact arithmetic.
class GroupRingElement {
public:
    static GroupRingElement zero(ShapePtr shape);
    static GroupRingElement constant(ShapePtr shape, Rat c);
    static GroupRingElement monomial(GroupElement g, Rat c = Rat(1));
    static GroupRingElement make(ShapePtr shape, TermMap terms);

    const ShapePtr& shape() const { return shape_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    GroupRingElement operator+(const GroupRingElement& o) const;
    GroupRingElement operator-(const GroupRingElement& o) const;
    GroupRingElement operator*(const GroupRingElement& o) const;
    GroupRingElement negated() const;
    bool operator==(const GroupRingElement& o) const;

    /// Valuation: min of the support; nullopt (= +infinity) for zero.
    std::optional<GroupElement> valuation() const;
    /// Image in the residue field (coefficient at group value 0); requires
    /// valuation >= 0.
    Rat residue() const;

    std::string to_literal() const;

private:
    GroupRingElement(ShapePtr shape, TermMap terms);
    ShapePtr shape_;
    TermMap terms_;
};

/// Truncated Hahn series: the represented value agrees with `terms` at every
/// group value below `cutoff`; terms at or above the cutoff are unknown. A
/// missing cutoff means the element is exact. Invariant: every stored term
/// lies strictly below the cutoff.
class SeriesElement {
public:
    static SeriesElement zero(ShapePtr shape);
    static SeriesElement constant(ShapePtr shape, Rat c);
    static SeriesElement monomial(GroupElement g, Rat c = Rat(1));
    static SeriesElement make(ShapePtr shape, TermMap terms,
                              std::optional<GroupElement> cutoff = std::nullopt);
    static SeriesElement from_ring(const GroupRingElement& r);

    const ShapePtr& shape() const { return shape_; }
    const TermMap& terms() const { return terms_; }
    const std::optional<GroupElement>& cutoff() const { return cutoff_; }
    bool is_exact() const { return !cutoff_.has_value(); }
    bool is_exact_zero() const { return terms_.empty() && is_exact(); }
    /// No known terms but finitely cut off: the value is only known to have
    /// valuation at or above the cutoff.
    bool is_zero_precision() const { return terms_.empty() && cutoff_.has_value(); }

    SeriesElement operator+(const SeriesElement& o) const;
    SeriesElement operator-(const SeriesElement& o) const;
    SeriesElement operator*(const SeriesElement& o) const;
    SeriesElement negated() const;
    SeriesElement scaled(const Rat& c) const;
    /// Identical representation (terms and cutoff).
    bool same_representation(const SeriesElement& o) const;

    /// Re-truncate to a (possibly lower) cutoff.
    SeriesElement truncated(const GroupElement& cutoff) const;
    SeriesElement pow(unsigned long e) const;

    /// Min of the known support. Throws PrecisionError when no term is known
    /// and the element is not exactly zero; nullopt = +infinity (exact zero).
    std::optional<GroupElement> valuation() const;
    /// Lower bound for the valuation that is always available: the valuation
    /// itself, or the cutoff of a zero-precision element. nullopt = +infinity.
    std::optional<GroupElement> valuation_lower_bound() const;
    Rat leading_coefficient() const;
    Rat residue() const;

    std::string to_literal() const;

private:
    SeriesElement(ShapePtr shape, TermMap terms, std::optional<GroupElement> cutoff);
    void normalize();
    ShapePtr shape_;
    TermMap terms_;
    std::optional<GroupElement> cutoff_;
};

enum class RingOp { Add, Neg, Mul };

GroupRingElement ring_arith(RingOp op, const GroupRingElement& r,
                            const GroupRingElement* s = nullptr);
SeriesElement ring_arith(RingOp op, const SeriesElement& r,
                         const SeriesElement* s = nullptr);

inline std::optional<GroupElement> series_valuation(const SeriesElement& s) {
    return s.valuation();
}

inline Rat residue(const SeriesElement& s) { return s.residue(); }

/// Order of the real-closed-style ordering on series: sign of the leading
/// coefficient of r - s. Throws PrecisionError when indeterminate.
int order_compare(const SeriesElement& r, const SeriesElement& s);

/// Multiplicative inverse accurate below target_cutoff: the returned u
/// satisfies v(s*u - 1) >= target_cutoff. Exact for monomials.
SeriesElement series_invert(const SeriesElement& s, const GroupElement& target_cutoff);
/// Exact inverse of a monomial series.
SeriesElement series_invert(const SeriesElement& s);

/// True iff v(s) >= c is certain at the current precision.
bool valuation_at_least(const SeriesElement& s, const GroupElement& c);

} // namespace hahn
