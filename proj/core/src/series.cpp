#include "hahn/series.hpp"

#include <sstream>

#include "hahn/errors.hpp"

namespace hahn {

namespace {

void check_same_shape(const ShapePtr& a, const ShapePtr& b, const char* who) {
    if (*a != *b) throw ShapeMismatchError(std::string(who) + ": shape mismatch");
}

std::string terms_to_literal(const TermMap& terms) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : terms) {
        if (!first) os << " + ";
        first = false;
        if (g.is_zero())
            os << to_string(c);
        else
            os << to_string(c) << "*t^{" << g.to_literal() << "}";
    }
    return os.str();
}

} // namespace

// ---------------------------------------------------------------------------
// GroupRingElement
// ---------------------------------------------------------------------------

GroupRingElement::GroupRingElement(ShapePtr shape, TermMap terms)
    : shape_(std::move(shape)), terms_(std::move(terms)) {
    if (!shape_) throw DomainError("group ring element without a shape");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (*it->first.shape() != *shape_)
            throw ShapeMismatchError("group ring term over a different shape");
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

GroupRingElement GroupRingElement::zero(ShapePtr shape) {
    return GroupRingElement(std::move(shape), {});
}

GroupRingElement GroupRingElement::constant(ShapePtr shape, Rat c) {
    TermMap m;
    if (c != 0) m.emplace(GroupElement::zero(shape), std::move(c));
    return GroupRingElement(std::move(shape), std::move(m));
}

GroupRingElement GroupRingElement::monomial(GroupElement g, Rat c) {
    ShapePtr shape = g.shape();
    TermMap m;
    if (c != 0) m.emplace(std::move(g), std::move(c));
    return GroupRingElement(std::move(shape), std::move(m));
}

GroupRingElement GroupRingElement::make(ShapePtr shape, TermMap terms) {
    return GroupRingElement(std::move(shape), std::move(terms));
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
    check_same_shape(shape_, o.shape_, "ring add");
    TermMap out = terms_;
    for (const auto& [g, c] : o.terms_) {
        auto [it, inserted] = out.emplace(g, c);
        if (!inserted) it->second += c;
    }
    return GroupRingElement(shape_, std::move(out));
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
    return *this + o.negated();
}

GroupRingElement GroupRingElement::negated() const {
    TermMap out;
    for (const auto& [g, c] : terms_) out.emplace(g, -c);
    return GroupRingElement(shape_, std::move(out));
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
    check_same_shape(shape_, o.shape_, "ring mul");
    TermMap out;
    for (const auto& [g, c] : terms_) {
        for (const auto& [h, d] : o.terms_) {
            GroupElement sum = g + h;
            Rat prod = c * d;
            auto [it, inserted] = out.emplace(std::move(sum), prod);
            if (!inserted) it->second += prod;
        }
    }
    return GroupRingElement(shape_, std::move(out));
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
    if (*shape_ != *o.shape_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
        if (a->second != b->second || a->first != b->first) return false;
    return true;
}

std::optional<GroupElement> GroupRingElement::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

Rat GroupRingElement::residue() const {
    auto v = valuation();
    if (!v) return Rat(0);
    if (v->sign() < 0)
        throw DomainError("residue of an element outside the valuation ring");
    auto it = terms_.find(GroupElement::zero(shape_));
    return it == terms_.end() ? Rat(0) : it->second;
}

std::string GroupRingElement::to_literal() const { return terms_to_literal(terms_); }

// ---------------------------------------------------------------------------
// SeriesElement
// ---------------------------------------------------------------------------

SeriesElement::SeriesElement(ShapePtr shape, TermMap terms,
                             std::optional<GroupElement> cutoff)
    : shape_(std::move(shape)), terms_(std::move(terms)), cutoff_(std::move(cutoff)) {
    normalize();
}

void SeriesElement::normalize() {
    if (!shape_) throw DomainError("series element without a shape");
    if (cutoff_ && *cutoff_->shape() != *shape_)
        throw ShapeMismatchError("series cutoff over a different shape");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (*it->first.shape() != *shape_)
            throw ShapeMismatchError("series term over a different shape");
        if (it->second == 0 || (cutoff_ && !(it->first < *cutoff_)))
            it = terms_.erase(it);
        else
            ++it;
    }
}

SeriesElement SeriesElement::zero(ShapePtr shape) {
    return SeriesElement(std::move(shape), {}, std::nullopt);
}

SeriesElement SeriesElement::constant(ShapePtr shape, Rat c) {
    TermMap m;
    if (c != 0) m.emplace(GroupElement::zero(shape), std::move(c));
    return SeriesElement(std::move(shape), std::move(m), std::nullopt);
}

SeriesElement SeriesElement::monomial(GroupElement g, Rat c) {
    ShapePtr shape = g.shape();
    TermMap m;
    if (c != 0) m.emplace(std::move(g), std::move(c));
    return SeriesElement(std::move(shape), std::move(m), std::nullopt);
}

SeriesElement SeriesElement::make(ShapePtr shape, TermMap terms,
                                  std::optional<GroupElement> cutoff) {
    return SeriesElement(std::move(shape), std::move(terms), std::move(cutoff));
}

SeriesElement SeriesElement::from_ring(const GroupRingElement& r) {
    return SeriesElement(r.shape(), r.terms(), std::nullopt);
}

namespace {

std::optional<GroupElement> min_cutoff(const std::optional<GroupElement>& a,
                                       const std::optional<GroupElement>& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

} // namespace

SeriesElement SeriesElement::operator+(const SeriesElement& o) const {
    check_same_shape(shape_, o.shape_, "series add");
    TermMap out = terms_;
    for (const auto& [g, c] : o.terms_) {
        auto [it, inserted] = out.emplace(g, c);
        if (!inserted) it->second += c;
    }
    return SeriesElement(shape_, std::move(out), min_cutoff(cutoff_, o.cutoff_));
}

SeriesElement SeriesElement::operator-(const SeriesElement& o) const {
    return *this + o.negated();
}

SeriesElement SeriesElement::negated() const {
    TermMap out;
    for (const auto& [g, c] : terms_) out.emplace(g, -c);
    return SeriesElement(shape_, std::move(out), cutoff_);
}

SeriesElement SeriesElement::scaled(const Rat& c) const {
    TermMap out;
    if (c != 0)
        for (const auto& [g, v] : terms_) out.emplace(g, v * c);
    return SeriesElement(shape_, std::move(out), cutoff_);
}

SeriesElement SeriesElement::operator*(const SeriesElement& o) const {
    check_same_shape(shape_, o.shape_, "series mul");
    if (is_exact_zero() || o.is_exact_zero()) return zero(shape_);
    if (is_zero_precision() && o.is_zero_precision())
        throw PrecisionError("product of two zero-precision series");

    // Unknown tail of one factor meets the known part of the other at or above
    // cutoff + v_low; the smaller of the two bounds rules the result.
    std::optional<GroupElement> cut;
    if (cutoff_) cut = *cutoff_ + *o.valuation_lower_bound();
    if (o.cutoff_) cut = min_cutoff(cut, *o.cutoff_ + *valuation_lower_bound());

    TermMap out;
    for (const auto& [g, c] : terms_) {
        for (const auto& [h, d] : o.terms_) {
            GroupElement sum = g + h;
            if (cut && !(sum < *cut)) continue;
            Rat prod = c * d;
            auto [it, inserted] = out.emplace(std::move(sum), prod);
            if (!inserted) it->second += prod;
        }
    }
    return SeriesElement(shape_, std::move(out), std::move(cut));
}

bool SeriesElement::same_representation(const SeriesElement& o) const {
    if (*shape_ != *o.shape_) return false;
    if (cutoff_.has_value() != o.cutoff_.has_value()) return false;
    if (cutoff_ && *cutoff_ != *o.cutoff_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
        if (a->second != b->second || a->first != b->first) return false;
    return true;
}

SeriesElement SeriesElement::truncated(const GroupElement& cutoff) const {
    return SeriesElement(shape_, terms_, min_cutoff(cutoff_, cutoff));
}

SeriesElement SeriesElement::pow(unsigned long e) const {
    SeriesElement acc = constant(shape_, Rat(1));
    SeriesElement base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

std::optional<GroupElement> SeriesElement::valuation() const {
    if (!terms_.empty()) return terms_.begin()->first;
    if (is_exact()) return std::nullopt;
    throw PrecisionError("valuation indeterminate: no terms known below cutoff " +
                         cutoff_->to_literal());
}

std::optional<GroupElement> SeriesElement::valuation_lower_bound() const {
    if (!terms_.empty()) return terms_.begin()->first;
    if (cutoff_) return cutoff_;
    return std::nullopt;
}

Rat SeriesElement::leading_coefficient() const {
    auto v = valuation();
    if (!v) return Rat(0);
    return terms_.begin()->second;
}

Rat SeriesElement::residue() const {
    GroupElement zero_g = GroupElement::zero(shape_);
    if (terms_.empty()) {
        if (is_exact()) return Rat(0);
        int c = group_cmp(*cutoff_, zero_g);
        if (c > 0) return Rat(0); // value has positive valuation
        throw PrecisionError("residue indeterminate at cutoff " +
                             cutoff_->to_literal());
    }
    const GroupElement& v = terms_.begin()->first;
    if (v.sign() < 0)
        throw DomainError("residue of a series outside the valuation ring");
    if (cutoff_ && !(zero_g < *cutoff_))
        throw PrecisionError("residue indeterminate: constant coefficient is "
                             "above the cutoff");
    auto it = terms_.find(zero_g);
    return it == terms_.end() ? Rat(0) : it->second;
}

std::string SeriesElement::to_literal() const {
    std::string out = terms_to_literal(terms_);
    if (cutoff_) out += " (cut " + cutoff_->to_literal() + ")";
    return out;
}

// ---------------------------------------------------------------------------
// Free operations
// ---------------------------------------------------------------------------

GroupRingElement ring_arith(RingOp op, const GroupRingElement& r,
                            const GroupRingElement* s) {
    switch (op) {
        case RingOp::Add:
            if (!s) throw DomainError("add needs two operands");
            return r + *s;
        case RingOp::Neg:
            return r.negated();
        case RingOp::Mul:
            if (!s) throw DomainError("mul needs two operands");
            return r * *s;
    }
    throw DomainError("unknown ring operation");
}

SeriesElement ring_arith(RingOp op, const SeriesElement& r, const SeriesElement* s) {
    switch (op) {
        case RingOp::Add:
            if (!s) throw DomainError("add needs two operands");
            return r + *s;
        case RingOp::Neg:
            return r.negated();
        case RingOp::Mul:
            if (!s) throw DomainError("mul needs two operands");
            return r * *s;
    }
    throw DomainError("unknown series operation");
}

int order_compare(const SeriesElement& r, const SeriesElement& s) {
    SeriesElement d = r - s;
    if (d.is_exact_zero()) return 0;
    if (d.terms().empty())
        throw PrecisionError("order comparison indeterminate below cutoff " +
                             d.cutoff()->to_literal());
    return sign(d.terms().begin()->second);
}

bool valuation_at_least(const SeriesElement& s, const GroupElement& c) {
    if (s.is_exact_zero()) return true;
    if (!s.terms().empty()) return !(*s.valuation() < c);
    // Zero precision: everything below the cutoff is known to vanish.
    return !(*s.cutoff() < c);
}

SeriesElement series_invert(const SeriesElement& s) {
    auto v = s.valuation();
    if (!v) throw DomainError("inverse of zero");
    if (s.terms().size() != 1 || !s.is_exact())
        throw DomainError("exact inversion requires a monomial");
    return SeriesElement::monomial(v->negated(), Rat(1) / s.leading_coefficient());
}

SeriesElement series_invert(const SeriesElement& s, const GroupElement& target_cutoff) {
    auto vopt = s.valuation();
    if (!vopt) throw DomainError("inverse of zero");
    const GroupElement v = *vopt;
    const Rat c = s.leading_coefficient();
    SeriesElement lead_inv = SeriesElement::monomial(v.negated(), Rat(1) / c);
    if (s.terms().size() == 1 && s.is_exact()) return lead_inv;

    // s * lead_inv = 1 - r with v(r) > 0; sum the geometric series in r until
    // its powers pass the precision needed for the requested cutoff.
    GroupElement inner_cut = target_cutoff + v;
    SeriesElement one = SeriesElement::constant(s.shape(), Rat(1));
    SeriesElement r = (one - s * lead_inv).truncated(inner_cut);
    SeriesElement acc = one.truncated(inner_cut);
    SeriesElement p = r;
    int guard = 0;
    while (!p.is_exact_zero() && !valuation_at_least(p, inner_cut)) {
        acc = acc + p;
        p = (p * r).truncated(inner_cut);
        if (++guard > 256)
            throw PrecisionError(
                "series inversion: target cutoff not reachable by finitely many "
                "correction terms");
    }
    SeriesElement u = lead_inv * acc; // propagated cutoff is at most the target

    SeriesElement err = s * u - one;
    if (!valuation_at_least(err, target_cutoff))
        throw PrecisionError("series inversion: operand precision too small for "
                             "the requested cutoff");
    return u;
}

} // namespace hahn
