#include "hahn/group.hpp"

#include <sstream>

#include "hahn/errors.hpp"

namespace hahn {

struct ShapeBuilder {
    static ShapePtr build(ShapeKind kind, IndexRange range, Scalar comp,
                          Scalar comp2, long d, ShapePtr base, Idx cut) {
        auto s = std::shared_ptr<GroupShape>(new GroupShape());
        s->kind_ = kind;
        s->range_ = range;
        s->component_ = comp;
        s->component2_ = comp2;
        s->dist_coeff_ = d;
        s->base_ = std::move(base);
        s->cut_ = cut;
        return s;
    }
};

ShapePtr GroupShape::integers() {
    static ShapePtr s = ShapeBuilder::build(ShapeKind::Int, IndexRange{0, 0},
                                            Scalar::Int, Scalar::Int, 0, nullptr, 0);
    return s;
}

ShapePtr GroupShape::rationals() {
    static ShapePtr s = ShapeBuilder::build(ShapeKind::Rat, IndexRange{0, 0},
                                            Scalar::Rat, Scalar::Rat, 0, nullptr, 0);
    return s;
}

ShapePtr GroupShape::dyadics() {
    static ShapePtr s = ShapeBuilder::build(ShapeKind::Dyadic, IndexRange{0, 0},
                                            Scalar::Dyadic, Scalar::Dyadic, 0,
                                            nullptr, 0);
    return s;
}

ShapePtr GroupShape::hahn_sum(IndexRange range, Scalar component) {
    // A range with lo > hi is the trivial group (only the zero element); the
    // tower construction uses it as the stage-0 value group.
    return ShapeBuilder::build(ShapeKind::HahnSum, range, component, component, 0,
                               nullptr, 0);
}

ShapePtr GroupShape::ext_hahn_sum(Idx lo, Scalar component, long d) {
    if (d == 0) throw DomainError("ext_hahn_sum: distinguished coefficient must be nonzero");
    return ShapeBuilder::build(ShapeKind::ExtendedHahnSum,
                               IndexRange{lo, std::nullopt}, component, component,
                               d, nullptr, 0);
}

ShapePtr GroupShape::lex_pair(Scalar left, Scalar right) {
    return ShapeBuilder::build(ShapeKind::LexPair, IndexRange{0, 1}, left, right,
                               0, nullptr, 0);
}

ShapePtr GroupShape::quotient(ShapePtr base, Idx cut) {
    if (!base || base->kind() != ShapeKind::HahnSum)
        throw DomainError("quotient: base shape must be a Hahn sum");
    if (!base->index_range().contains(cut))
        throw DomainError("quotient: cut index outside the base index range");
    IndexRange r = base->index_range();
    r.hi = cut;
    return ShapeBuilder::build(ShapeKind::Quotient, r, base->component_,
                               base->component_, 0, std::move(base), cut);
}

Scalar GroupShape::scalar_at(Idx i) const {
    if (kind_ == ShapeKind::LexPair) return i == 0 ? component_ : component2_;
    return component_;
}

bool GroupShape::operator==(const GroupShape& other) const {
    if (kind_ != other.kind_) return false;
    if (range_ != other.range_) return false;
    if (component_ != other.component_ || component2_ != other.component2_)
        return false;
    if (dist_coeff_ != other.dist_coeff_) return false;
    if (kind_ == ShapeKind::Quotient) {
        if (cut_ != other.cut_) return false;
        return *base_ == *other.base_;
    }
    return true;
}

namespace {

std::string scalar_name(Scalar s) {
    switch (s) {
        case Scalar::Int: return "int";
        case Scalar::Rat: return "rat";
        case Scalar::Dyadic: return "dyadic";
    }
    return "?";
}

std::string range_name(const IndexRange& r) {
    if (r.lo && !r.hi && *r.lo == 0) return "omega";
    if (!r.lo && r.hi && *r.hi == 0) return "-omega";
    std::ostringstream os;
    os << "(range " << (r.lo ? std::to_string(*r.lo) : std::string("-inf")) << " "
       << (r.hi ? std::to_string(*r.hi) : std::string("inf")) << ")";
    return os.str();
}

} // namespace

std::string GroupShape::to_sexpr() const {
    switch (kind_) {
        case ShapeKind::Int: return "int";
        case ShapeKind::Rat: return "rat";
        case ShapeKind::Dyadic: return "dyadic";
        case ShapeKind::HahnSum:
            return "(hahnsum " + range_name(range_) + " " + scalar_name(component_) + ")";
        case ShapeKind::ExtendedHahnSum: {
            IndexRange r{range_.lo, std::nullopt};
            return "(extsum " + range_name(r) + " " + scalar_name(component_) + " " +
                   std::to_string(dist_coeff_) + ")";
        }
        case ShapeKind::LexPair:
            return "(lex " + scalar_name(component_) + " " + scalar_name(component2_) + ")";
        case ShapeKind::Quotient:
            return "(quot " + base_->to_sexpr() + " " + std::to_string(cut_) + ")";
    }
    return "?";
}

bool scalar_accepts(Scalar s, const Rat& coeff) {
    switch (s) {
        case Scalar::Int: return is_integer(coeff);
        case Scalar::Rat: return true;
        case Scalar::Dyadic: return is_dyadic(coeff);
    }
    return false;
}

// ---------------------------------------------------------------------------
// GroupElement
// ---------------------------------------------------------------------------

GroupElement::GroupElement(ShapePtr shape, std::map<Idx, Rat> entries, Rat dist)
    : shape_(std::move(shape)), entries_(std::move(entries)), dist_(std::move(dist)) {
    normalize();
}

void GroupElement::normalize() {
    if (!shape_) throw DomainError("group element without a shape");
    if (dist_ != 0 && !shape_->is_extended())
        throw DomainError("distinguished multiple on a non-extended shape");
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (!shape_->index_range().contains(it->first))
            throw DomainError("entry index " + std::to_string(it->first) +
                              " outside the shape's index range");
        if (it->second == 0)
            it = entries_.erase(it);
        else
            ++it;
    }
}

GroupElement GroupElement::zero(ShapePtr shape) {
    return GroupElement(std::move(shape), {}, Rat(0));
}

GroupElement GroupElement::make(ShapePtr shape, std::map<Idx, Rat> entries, Rat dist) {
    return GroupElement(std::move(shape), std::move(entries), std::move(dist));
}

GroupElement GroupElement::unit(ShapePtr shape, Idx idx, Rat coeff) {
    std::map<Idx, Rat> m;
    m.emplace(idx, std::move(coeff));
    return GroupElement(std::move(shape), std::move(m), Rat(0));
}

GroupElement GroupElement::distinguished(ShapePtr shape, Rat k) {
    if (!shape->is_extended())
        throw DomainError("distinguished element requires an extended Hahn sum");
    return GroupElement(std::move(shape), {}, std::move(k));
}

Rat GroupElement::effective(Idx i) const {
    Rat v(0);
    auto it = entries_.find(i);
    if (it != entries_.end()) v = it->second;
    if (shape_->is_extended() && shape_->index_range().contains(i))
        v += Rat(shape_->distinguished_coeff()) * dist_;
    return v;
}

bool GroupElement::in_group(Int* denom) const {
    Int lcm(1);
    auto fold = [&lcm](const Rat& q, Scalar s) {
        switch (s) {
            case Scalar::Int:
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
                break;
            case Scalar::Rat:
                break;
            case Scalar::Dyadic: {
                // Odd part of the denominator must be cleared.
                Int den = q.get_den();
                while (mpz_even_p(den.get_mpz_t())) den /= 2;
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
                break;
            }
        }
    };
    for (const auto& [i, c] : entries_) fold(c, shape_->scalar_at(i));
    if (shape_->is_extended())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), dist_.get_den().get_mpz_t());
    if (denom) *denom = lcm;
    return lcm == 1;
}

GroupElement GroupElement::operator+(const GroupElement& other) const {
    if (*shape_ != *other.shape_)
        throw ShapeMismatchError("group addition across different shapes");
    std::map<Idx, Rat> out = entries_;
    for (const auto& [i, c] : other.entries_) {
        auto [it, inserted] = out.emplace(i, c);
        if (!inserted) it->second += c;
    }
    return GroupElement(shape_, std::move(out), dist_ + other.dist_);
}

GroupElement GroupElement::operator-(const GroupElement& other) const {
    return *this + other.negated();
}

GroupElement GroupElement::negated() const {
    std::map<Idx, Rat> out;
    for (const auto& [i, c] : entries_) out.emplace(i, -c);
    return GroupElement(shape_, std::move(out), -dist_);
}

GroupElement GroupElement::scaled(const Rat& c) const {
    std::map<Idx, Rat> out;
    if (c != 0)
        for (const auto& [i, v] : entries_) out.emplace(i, v * c);
    return GroupElement(shape_, std::move(out), dist_ * c);
}

int GroupElement::cmp(const GroupElement& x, const GroupElement& y) {
    if (*x.shape_ != *y.shape_)
        throw ShapeMismatchError("group comparison across different shapes");
    const GroupShape& shape = *x.shape_;
    Rat dk = x.dist_ - y.dist_;

    auto xi = x.entries_.begin();
    auto yi = y.entries_.begin();
    if (!shape.is_extended() || dk == 0) {
        while (xi != x.entries_.end() || yi != y.entries_.end()) {
            if (yi == y.entries_.end() || (xi != x.entries_.end() && xi->first < yi->first)) {
                if (xi->second != 0) return hahn::sign(xi->second);
                ++xi;
            } else if (xi == x.entries_.end() || yi->first < xi->first) {
                if (yi->second != 0) return -hahn::sign(yi->second);
                ++yi;
            } else {
                Rat d = xi->second - yi->second;
                if (d != 0) return hahn::sign(d);
                ++xi;
                ++yi;
            }
        }
        return 0;
    }

    // Extended shape with differing distinguished multiples: every index not
    // in either support carries the nonzero effective difference d*dk, so the
    // scan walks gaps from the low end of the range.
    Rat step = Rat(shape.distinguished_coeff()) * dk;
    Idx pos = *shape.index_range().lo;
    std::map<Idx, Rat> merged;
    for (const auto& [i, c] : x.entries_) merged[i] += c;
    for (const auto& [i, c] : y.entries_) merged[i] -= c;
    for (const auto& [i, dc] : merged) {
        if (pos < i) return hahn::sign(step);
        Rat v = dc + step;
        if (v != 0) return hahn::sign(v);
        pos = i + 1;
    }
    return hahn::sign(step);
}

std::optional<Idx> GroupElement::vmin() const {
    if (shape_->is_extended() && dist_ != 0) {
        Rat step = Rat(shape_->distinguished_coeff()) * dist_;
        Idx pos = *shape_->index_range().lo;
        for (const auto& [i, c] : entries_) {
            if (pos < i) return pos;
            if (c + step != 0) return i;
            pos = i + 1;
        }
        return pos;
    }
    if (entries_.empty()) return std::nullopt;
    return entries_.begin()->first;
}

int GroupElement::sign() const {
    auto v = vmin();
    if (!v) return 0;
    return hahn::sign(effective(*v));
}

std::string GroupElement::to_literal() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [i, c] : entries_) {
        if (!first) os << ",";
        first = false;
        os << i << ":" << to_string(c);
    }
    os << "}";
    if (dist_ != 0) os << "+" << to_string(dist_) << "*a";
    return os.str();
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

GroupElement group_arith(ArithOp op, const GroupElement& x, const GroupElement* y,
                         long scalar) {
    switch (op) {
        case ArithOp::Add:
            if (!y) throw DomainError("add needs two operands");
            return x + *y;
        case ArithOp::Neg:
            return x.negated();
        case ArithOp::Scalar:
            return x.scaled(Rat(scalar));
    }
    throw DomainError("unknown group operation");
}

std::optional<GroupElement> is_n_divisible(const GroupElement& x, long n) {
    if (n < 1) throw DomainError("divisibility requires n >= 1");
    GroupElement q = x.scaled(make_rat(1, n));
    if (q.in_group()) return q;
    return std::nullopt;
}

GroupElement quotient_project(const GroupElement& x, Idx cut_index) {
    const GroupShape& s = *x.shape();
    ShapePtr result_shape;
    if (s.kind() == ShapeKind::HahnSum) {
        result_shape = GroupShape::quotient(x.shape(), cut_index);
    } else if (s.kind() == ShapeKind::Quotient) {
        if (cut_index > s.quotient_cut())
            throw DomainError("quotient_project: cut above the existing cut");
        result_shape = GroupShape::quotient(s.quotient_base(), cut_index);
    } else {
        throw DomainError("quotient_project requires a Hahn sum shape");
    }
    std::map<Idx, Rat> kept;
    for (const auto& [i, c] : x.entries())
        if (i <= cut_index) kept.emplace(i, c);
    return GroupElement::make(std::move(result_shape), std::move(kept));
}

} // namespace hahn
