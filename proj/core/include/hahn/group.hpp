#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hahn/rational.hpp"

namespace hahn {

using Idx = int;

/// Convex index range inside Z; an unset bound means unbounded on that side.
struct IndexRange {
    std::optional<Idx> lo;
    std::optional<Idx> hi;

    bool contains(Idx i) const {
        if (lo && i < *lo) return false;
        if (hi && i > *hi) return false;
        return true;
    }
    bool operator==(const IndexRange&) const = default;
};

enum class ShapeKind { Int, Rat, Dyadic, HahnSum, ExtendedHahnSum, LexPair, Quotient };

/// Scalar coefficient domain of one component.
enum class Scalar { Int, Rat, Dyadic };

class GroupShape;
using ShapePtr = std::shared_ptr<const GroupShape>;

/// Shape of an ordered abelian group: scalar groups Z, Q, Z[1/2]; finite-support
/// Hahn sums over a convex subset of Z; the extended sum that adjoins integer
/// multiples of the distinguished element a = sum of d*1_i over the whole index
/// set; lexicographic pairs; and coarse-end quotients of Hahn sums.
///
/// Elements are ordered by the sign of the effective coefficient at the least
/// support index (lower index = more significant).
class GroupShape {
public:
    static ShapePtr integers();
    static ShapePtr rationals();
    static ShapePtr dyadics();
    static ShapePtr hahn_sum(IndexRange range, Scalar component);
    /// Index range [lo, +inf); the distinguished element is a = sum_i d*1_i.
    static ShapePtr ext_hahn_sum(Idx lo, Scalar component, long d);
    static ShapePtr lex_pair(Scalar left, Scalar right);
    static ShapePtr quotient(ShapePtr base, Idx cut);

    ShapeKind kind() const { return kind_; }
    bool is_scalar() const {
        return kind_ == ShapeKind::Int || kind_ == ShapeKind::Rat ||
               kind_ == ShapeKind::Dyadic;
    }
    bool is_extended() const { return kind_ == ShapeKind::ExtendedHahnSum; }

    /// Effective index range of elements (scalars: [0,0], lex pairs: [0,1],
    /// quotients: base range truncated at the cut).
    const IndexRange& index_range() const { return range_; }
    Scalar scalar_at(Idx i) const;
    long distinguished_coeff() const { return dist_coeff_; }
    const ShapePtr& quotient_base() const { return base_; }
    Idx quotient_cut() const { return cut_; }

    bool operator==(const GroupShape& other) const;
    bool operator!=(const GroupShape& other) const { return !(*this == other); }

    std::string to_sexpr() const;

private:
    GroupShape() = default;
    friend struct ShapeBuilder;

    ShapeKind kind_ = ShapeKind::Int;
    IndexRange range_{0, 0};
    Scalar component_ = Scalar::Int;
    Scalar component2_ = Scalar::Int; // right component of a lex pair
    long dist_coeff_ = 0;
    ShapePtr base_;
    Idx cut_ = 0;
};

/// Element of the divisible hull of a configured group: a finite support map
/// index -> rational, plus (for extended sums) a rational multiple of the
/// distinguished element. The representation is canonical, so equality is
/// componentwise. Membership in the group itself is the in_group() predicate
/// (integer entries where the component is Z, dyadic where it is Z[1/2],
/// integral distinguished multiple).
class GroupElement {
public:
    static GroupElement zero(ShapePtr shape);
    static GroupElement make(ShapePtr shape, std::map<Idx, Rat> entries, Rat dist = Rat(0));
    /// coeff * 1_idx
    static GroupElement unit(ShapePtr shape, Idx idx, Rat coeff = Rat(1));
    /// k * a (extended shapes only)
    static GroupElement distinguished(ShapePtr shape, Rat k);

    const ShapePtr& shape() const { return shape_; }
    const std::map<Idx, Rat>& entries() const { return entries_; }
    const Rat& dist_multiple() const { return dist_; }

    bool is_zero() const { return entries_.empty() && dist_ == 0; }
    /// Coefficient visible at index i (entry plus d*k for extended shapes).
    Rat effective(Idx i) const;
    /// True iff the element lies in the group (not just its divisible hull).
    /// When it does and denom is non-null, *denom is set to the least n >= 1
    /// with n * (this) integral in every coordinate (always 1 here); when it
    /// does not, *denom receives the least n with n * (this) in the group.
    bool in_group(Int* denom = nullptr) const;

    GroupElement operator+(const GroupElement& other) const;
    GroupElement operator-(const GroupElement& other) const;
    GroupElement negated() const;
    GroupElement scaled(const Rat& c) const;

    /// Total order: sign of (x - y) under the min-support ordering. -1, 0, 1.
    static int cmp(const GroupElement& x, const GroupElement& y);
    bool operator==(const GroupElement& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const GroupElement& o) const { return cmp(*this, o) != 0; }
    bool operator<(const GroupElement& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const GroupElement& o) const { return cmp(*this, o) <= 0; }
    bool operator>(const GroupElement& o) const { return cmp(*this, o) > 0; }
    bool operator>=(const GroupElement& o) const { return cmp(*this, o) >= 0; }

    /// Least index with a nonzero effective coefficient; nullopt (= +infinity)
    /// for the zero element.
    std::optional<Idx> vmin() const;
    int sign() const;
    GroupElement abs() const { return sign() < 0 ? negated() : *this; }

    std::string to_literal() const;

private:
    GroupElement(ShapePtr shape, std::map<Idx, Rat> entries, Rat dist);
    void normalize();

    ShapePtr shape_;
    std::map<Idx, Rat> entries_;
    Rat dist_;
};

/// Strict weak order on elements of one group; usable as a map comparator.
struct GroupLess {
    bool operator()(const GroupElement& x, const GroupElement& y) const {
        return GroupElement::cmp(x, y) < 0;
    }
};

enum class ArithOp { Add, Neg, Scalar };

/// Pointwise arithmetic dispatcher mirroring the CLI surface. `scalar` is the
/// integer factor for ArithOp::Scalar and ignored otherwise.
GroupElement group_arith(ArithOp op, const GroupElement& x,
                         const GroupElement* y = nullptr, long scalar = 0);

inline int group_cmp(const GroupElement& x, const GroupElement& y) {
    return GroupElement::cmp(x, y);
}

inline std::optional<Idx> vmin_support(const GroupElement& x) { return x.vmin(); }

/// Quotient x/n when it lies in the group; nullopt otherwise. n >= 1.
std::optional<GroupElement> is_n_divisible(const GroupElement& x, long n);

/// Representative of x in the quotient by entries above cutIndex; result shape
/// is Quotient(base, cutIndex), identified with the truncated Hahn sum.
GroupElement quotient_project(const GroupElement& x, Idx cut_index);

bool scalar_accepts(Scalar s, const Rat& coeff);

} // namespace hahn
