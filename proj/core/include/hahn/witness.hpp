#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hahn/group.hpp"

namespace hahn {

/// A point of the divisible hull outside the group, together with a procedure
/// producing, for every positive bound b, a group element g with
/// limit_point - b < g < limit_point (left-sided approximation).
struct LimitPointWitness {
    GroupElement limit_point;
    std::function<GroupElement(const GroupElement&)> generator;
    std::string method;
};

/// Interval (lo, hi) inside the convex subgroup at level `level` that contains
/// no n-divisible element; every interior point has effective coefficient q at
/// that level.
struct RegularityCounterexample {
    long n = 0;
    long q = 0;
    Idx level = 0;
    GroupElement lo;
    GroupElement hi;
    std::string reason;
};

struct DiscretenessResult {
    bool discrete = false;
    std::optional<GroupElement> least_positive;
};

enum class Closedness { Closed, NotClosed, Unknown };

enum class Verdict { True, False, Inconclusive };

/// One evaluated instance of the closedness axiom
///   (for all b>0 exists g |a - n g| < b)  ->  (exists h  a = n h).
struct AxiomSample {
    GroupElement a;
    GroupElement bound;
    Verdict antecedent = Verdict::Inconclusive;
    std::optional<GroupElement> approximant; // g, when the antecedent holds
    bool consequent = false;
    std::optional<GroupElement> quotient;    // h, when divisible
    Verdict implication = Verdict::Inconclusive;
};

struct AxiomReport {
    ShapePtr shape;
    long n = 0;
    std::vector<AxiomSample> samples;
    Closedness known_status = Closedness::Unknown;
    /// False instances may appear only over shapes that are not closed in
    /// their divisible hull.
    bool consistent = true;
};

template <class T>
struct Checked {
    std::optional<T> value;
    std::string reason;
    explicit operator bool() const { return value.has_value(); }
    const T& operator*() const { return *value; }
    const T* operator->() const { return &*value; }
};

/// Canonical non-membership witnesses for the two configured families that are
/// not closed in their divisible hull:
///  - the extended sum over omega (limit point a/2, tail-sum generator),
///  - the dyadic Hahn sum over -omega (limit point 1/3 at index 0, binary
///    truncation generator).
LimitPointWitness limit_point_witness(const ShapePtr& shape);

/// Limit-point witness for a/n built from n-regularity of the convex subgroup
/// at the given level (dyadic family). Requires n >= 2 and a not n-divisible;
/// when a is not supplied, the unit at the subgroup level is used.
Checked<LimitPointWitness> prop_closedness_witness(
    const ShapePtr& shape, Idx level, long n,
    std::optional<GroupElement> a = std::nullopt);

/// Deterministic sample of a point strictly inside the counterexample interval.
GroupElement sample_regularity_interior(const RegularityCounterexample& ce,
                                        unsigned long seed);

/// Binary-truncation approximant for the limit point exact_part + rho*1_0 over
/// the dyadic tail shape: the finest-grained dyadic d below rho with
/// n*(rho - d) < bound. Used by both witness generators and the parameter
/// certification layer.
GroupElement dyadic_left_approximant(const ShapePtr& shape,
                                     const GroupElement& exact_part,
                                     const Rat& rho, long n,
                                     const GroupElement& bound);

RegularityCounterexample regularity_counterexample(const ShapePtr& shape, long n,
                                                   Idx level);

DiscretenessResult is_discrete(const ShapePtr& shape);

/// Rule-based closedness status for the configured shapes.
Closedness shape_closedness(const ShapePtr& shape);

AxiomReport sampled_closedness_axiom(
    const ShapePtr& shape, long n,
    const std::vector<std::pair<GroupElement, GroupElement>>& samples);

/// Decides whether some g in the group satisfies |a - n g| < b, with a witness
/// when one exists. Exact for every configured shape.
struct AntecedentDecision {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<GroupElement> witness;
};
AntecedentDecision decide_axiom_antecedent(const GroupElement& a,
                                           const GroupElement& bound, long n);

} // namespace hahn
