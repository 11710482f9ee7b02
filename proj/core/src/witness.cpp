#include "hahn/witness.hpp"

#include <random>

#include "hahn/errors.hpp"

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

void require_positive(const GroupElement& b, const char* who) {
    if (b.sign() <= 0) throw DomainError(std::string(who) + ": bound must be positive");
}

/// Generator for the extended sum over omega: for positive b with vmin(b) = l,
/// the partial sum g = sum_{i=0}^{l+1} 1_i of the half-distinguished element
/// satisfies  limit - b < g < limit.
GroupElement tail_sum_generator(const ShapePtr& shape, const GroupElement& b) {
    require_positive(b, "tail-sum generator");
    Idx ell = *b.vmin();
    std::map<Idx, Rat> m;
    for (Idx i = 0; i <= ell + 1; ++i) m.emplace(i, Rat(1));
    return GroupElement::make(shape, std::move(m));
}

} // namespace

GroupElement dyadic_left_approximant(const ShapePtr& shape,
                                     const GroupElement& exact_part,
                                     const Rat& rho, long n,
                                     const GroupElement& b) {
    require_positive(b, "dyadic truncation generator");
    GroupElement limit = exact_part + GroupElement::unit(shape, 0, rho);
    for (unsigned k = 0; k <= 256; ++k) {
        Rat d = dyadic_floor(rho, k);
        if (d >= rho) continue; // rho itself dyadic at this precision
        GroupElement g = exact_part + GroupElement::unit(shape, 0, d);
        GroupElement gap = (limit - g).scaled(Rat(n));
        if (group_cmp(gap, b) < 0) return g;
    }
    throw SearchExhaustedError("dyadic truncation generator: no admissible grid");
}

LimitPointWitness limit_point_witness(const ShapePtr& shape) {
    if (is_counterhong_shape(*shape)) {
        GroupElement limit = GroupElement::distinguished(shape, make_rat(1, 2));
        ShapePtr s = shape;
        return LimitPointWitness{
            limit,
            [s](const GroupElement& b) { return tail_sum_generator(s, b); },
            "tail-sum"};
    }
    if (is_dyadic_tail_shape(*shape)) {
        Rat rho = make_rat(1, 3);
        GroupElement limit = GroupElement::unit(shape, 0, rho);
        ShapePtr s = shape;
        GroupElement zero = GroupElement::zero(shape);
        return LimitPointWitness{
            limit,
            [s, zero, rho](const GroupElement& b) {
                return dyadic_left_approximant(s, zero, rho, 3, b);
            },
            "dyadic-truncation"};
    }
    throw DomainError("limit_point_witness: no witness procedure for shape " +
                      shape->to_sexpr());
}

Checked<LimitPointWitness> prop_closedness_witness(const ShapePtr& shape, Idx level,
                                                   long n,
                                                   std::optional<GroupElement> a) {
    if (n == 1)
        return {std::nullopt, "every group is 1-divisible"};
    if (n < 1) throw DomainError("prop_closedness_witness: n must be >= 1");
    if (!is_dyadic_tail_shape(*shape))
        return {std::nullopt, "no n-regular non-divisible convex subgroup is "
                              "configured for shape " + shape->to_sexpr()};
    if (level != 0)
        return {std::nullopt, "only the level-0 convex subgroup is n-regular here"};
    if (is_discrete(shape).discrete)
        return {std::nullopt, "shape is not densely ordered"};

    GroupElement elem = a.value_or(GroupElement::unit(shape, level, Rat(1)));
    if (elem.vmin() != std::optional<Idx>(level) || elem.entries().size() != 1)
        return {std::nullopt, "element must be a nonzero multiple of the unit at "
                              "the subgroup level"};
    if (is_n_divisible(elem, n))
        return {std::nullopt, "element is n-divisible; its quotient already lies "
                              "in the group"};

    Rat alpha = elem.entries().begin()->second;
    Rat rho = alpha / n;

    // Sampled n-regularity of the level subgroup: shrinking intervals around
    // the element must contain n-divisible members.
    for (int j = 0; j <= 6; ++j) {
        Rat half = make_rat(1, 1L << j);
        Rat lo = (alpha - half) / n, hi = (alpha + half) / n;
        bool found = false;
        for (unsigned k = 0; k <= 64 && !found; ++k) {
            Rat d = dyadic_floor(hi, k);
            if (d > lo && d < hi) found = true;
            if (d == hi && is_dyadic(hi)) found = true;
        }
        if (!found)
            return {std::nullopt, "n-regularity sampling failed on interval " +
                                  to_string(lo) + ".." + to_string(hi)};
    }

    ShapePtr s = shape;
    GroupElement zero = GroupElement::zero(shape);
    LimitPointWitness w{
        GroupElement::unit(shape, 0, rho),
        [s, zero, rho, n](const GroupElement& b) {
            return dyadic_left_approximant(s, zero, rho, n, b);
        },
        "regularity-interval"};
    return {std::move(w), ""};
}

RegularityCounterexample regularity_counterexample(const ShapePtr& shape, long n,
                                                   Idx level) {
    if (!is_counterhong_shape(*shape))
        throw DomainError("regularity_counterexample requires the extended sum "
                          "over omega");
    if (n < 2) throw DomainError("regularity_counterexample: n must be >= 2");
    if (level < *shape->index_range().lo)
        throw DomainError("regularity_counterexample: level outside index range");
    long q = least_prime_above(n);
    GroupElement lo = GroupElement::unit(shape, level, Rat(q));
    GroupElement hi = lo + GroupElement::unit(shape, level + 1, Rat(1));
    std::string reason = "every interior point has effective coefficient " +
                         std::to_string(q) + " at index " + std::to_string(level) +
                         ", and " + std::to_string(n) +
                         " does not divide the prime " + std::to_string(q);
    return RegularityCounterexample{n, q, level, std::move(lo), std::move(hi),
                                    std::move(reason)};
}

GroupElement sample_regularity_interior(const RegularityCounterexample& ce,
                                        unsigned long seed) {
    std::mt19937_64 rng(seed);
    const ShapePtr& shape = ce.lo.shape();
    std::uniform_int_distribution<int> coeff(-8, 8), small(1, 8), kdist(-1, 1),
        coin(0, 1);

    // Effective coefficients: q at the level, then a tail in (0, 1_{level+1}).
    std::map<Idx, Rat> eff;
    eff[ce.level] = Rat(ce.q);
    if (coin(rng)) {
        eff[ce.level + 1] = Rat(0);
        eff[ce.level + 2] = Rat(small(rng));
        eff[ce.level + 3] = Rat(coeff(rng));
    } else {
        eff[ce.level + 1] = Rat(1);
        eff[ce.level + 2] = Rat(-small(rng));
        eff[ce.level + 3] = Rat(coeff(rng));
    }
    long k = kdist(rng);

    // Convert effective coefficients into the (entries, k) representation:
    // entry(i) = eff(i) - 2k on every index up to the support end, and the
    // effective value below the level must vanish for membership in C.
    std::map<Idx, Rat> entries;
    Idx top = eff.rbegin()->first;
    for (Idx i = 0; i <= top; ++i) {
        Rat want = i < ce.level ? Rat(0) : (eff.count(i) ? eff[i] : Rat(2 * k));
        Rat entry = want - Rat(2 * k);
        if (entry != 0) entries[i] = entry;
    }
    GroupElement z = GroupElement::make(shape, std::move(entries), Rat(k));
    if (!(ce.lo < z && z < ce.hi))
        throw Error("interior sampler produced a point outside the interval");
    return z;
}

DiscretenessResult is_discrete(const ShapePtr& shape) {
    const GroupShape& s = *shape;
    switch (s.kind()) {
        case ShapeKind::Int:
            return {true, GroupElement::unit(shape, 0, Rat(1))};
        case ShapeKind::Rat:
        case ShapeKind::Dyadic:
            return {false, std::nullopt};
        case ShapeKind::HahnSum:
        case ShapeKind::Quotient: {
            if (s.index_range().lo && s.index_range().hi &&
                *s.index_range().lo > *s.index_range().hi)
                return {false, std::nullopt}; // trivial group
            if (s.scalar_at(0) == Scalar::Int && s.index_range().hi)
                return {true, GroupElement::unit(shape, *s.index_range().hi, Rat(1))};
            return {false, std::nullopt};
        }
        case ShapeKind::ExtendedHahnSum:
            // The support value set is unbounded above, so no least positive
            // element exists.
            return {false, std::nullopt};
        case ShapeKind::LexPair: {
            if (s.scalar_at(1) == Scalar::Int)
                return {true, GroupElement::unit(shape, 1, Rat(1))};
            return {false, std::nullopt};
        }
    }
    return {false, std::nullopt};
}

Closedness shape_closedness(const ShapePtr& shape) {
    const GroupShape& s = *shape;
    switch (s.kind()) {
        case ShapeKind::Int:
        case ShapeKind::Rat:
            return Closedness::Closed;
        case ShapeKind::Dyadic:
            return Closedness::NotClosed;
        case ShapeKind::HahnSum:
        case ShapeKind::Quotient:
            switch (s.scalar_at(0)) {
                case Scalar::Int: return Closedness::Closed;
                case Scalar::Rat: return Closedness::Closed;
                case Scalar::Dyadic:
                    // A limit point needs its defect at the least significant
                    // index; it exists exactly when the range has a maximum.
                    return s.index_range().hi ? Closedness::NotClosed
                                              : Closedness::Closed;
            }
            return Closedness::Unknown;
        case ShapeKind::ExtendedHahnSum:
            return s.distinguished_coeff() % 2 == 0 ? Closedness::NotClosed
                                                    : Closedness::Unknown;
        case ShapeKind::LexPair:
            return s.scalar_at(1) == Scalar::Dyadic ? Closedness::NotClosed
                                                    : Closedness::Closed;
    }
    return Closedness::Unknown;
}

namespace {

/// Window of indices strictly below ell where a has a nonzero effective
/// coefficient.
std::vector<Idx> low_indices(const GroupElement& a, Idx ell) {
    std::vector<Idx> out;
    const GroupShape& s = *a.shape();
    if (s.is_extended() && a.dist_multiple() != 0) {
        for (Idx i = *s.index_range().lo; i < ell; ++i)
            if (a.effective(i) != 0) out.push_back(i);
    } else {
        for (const auto& [i, c] : a.entries())
            if (i < ell) out.push_back(i);
    }
    return out;
}

std::optional<Idx> next_index_above(const GroupShape& s, Idx ell) {
    if (s.index_range().hi && *s.index_range().hi <= ell) return std::nullopt;
    return ell + 1;
}

} // namespace

AntecedentDecision decide_axiom_antecedent(const GroupElement& a,
                                           const GroupElement& bound, long n) {
    require_positive(bound, "closedness axiom");
    if (!a.in_group())
        throw DomainError("closedness axiom quantifies over group elements");
    if (n < 1) throw DomainError("closedness axiom: n must be >= 1");
    const ShapePtr& shape = a.shape();
    const GroupShape& s = *shape;
    if (n == 1) return {Verdict::True, a};

    Idx ell = *bound.vmin();
    Rat beta = bound.effective(ell);

    // Below the bound's leading index the difference a - n g must vanish
    // exactly; each coordinate admits that iff eff(i)/n stays in the component.
    std::map<Idx, Rat> g_eff;
    for (Idx i : low_indices(a, ell)) {
        Rat q = a.effective(i) / n;
        if (!scalar_accepts(s.scalar_at(i), q)) return {Verdict::False, std::nullopt};
        g_eff[i] = q;
    }

    Rat e = a.effective(ell);
    bool done = false;
    switch (s.scalar_at(ell)) {
        case Scalar::Rat:
            g_eff[ell] = e / n;
            done = true;
            break;
        case Scalar::Dyadic: {
            if (scalar_accepts(Scalar::Dyadic, e / n)) {
                g_eff[ell] = e / n;
            } else {
                // Dense residues: pick a dyadic d with 0 < e - n d < beta.
                Rat target = e / n;
                for (unsigned k = 0;; ++k) {
                    if (k > 256) return {Verdict::Inconclusive, std::nullopt};
                    Rat d = dyadic_floor(target, k);
                    if (d < target && (e - Rat(n) * d) < beta) {
                        g_eff[ell] = d;
                        break;
                    }
                }
            }
            done = true;
            break;
        }
        case Scalar::Int: {
            if (!is_integer(e)) return {Verdict::Inconclusive, std::nullopt};
            Int r = balanced_remainder(e.get_num(), Int(n));
            Rat rr(r);
            if (rr < beta) {
                // g_l = (e - r')/n with |r'| = r, r' = e - n*round(e/n).
                Int m, rem;
                mpz_fdiv_qr(m.get_mpz_t(), rem.get_mpz_t(), e.get_num().get_mpz_t(),
                            Int(n).get_mpz_t());
                if (2 * rem > Int(n)) m += 1;
                g_eff[ell] = Rat(m);
                done = true;
            } else if (rr > beta) {
                return {Verdict::False, std::nullopt};
            } else {
                // |a_l - n g_l| = beta exactly: resolvable only by pushing the
                // next coordinate strictly inside the bound.
                auto j = next_index_above(s, ell);
                if (!j) return {Verdict::False, std::nullopt};
                // Achieve x_l = +beta if possible, else x_l = -beta.
                Int bz = beta.get_num(); // beta = r integral here
                Int diff = e.get_num() - bz;
                bool plus_ok = diff % Int(n) == 0;
                Int num = plus_ok ? diff : e.get_num() + bz;
                g_eff[ell] = Rat(num / Int(n));
                // x_j = eff_a(j) - n g_j strictly below b(j) (plus case) or
                // strictly above -b(j) (minus case).
                Rat aj = a.effective(*j), bj = bound.effective(*j);
                Int gj;
                if (plus_ok) {
                    Rat want = aj - bj; // need x_j strictly below bj
                    Rat shifted = want + 1;
                    Int den = shifted.get_den() * Int(n);
                    Int w;
                    mpz_cdiv_q(w.get_mpz_t(), shifted.get_num().get_mpz_t(),
                               den.get_mpz_t());
                    gj = w + 1;
                } else {
                    Rat want = aj + bj; // need x_j strictly above -bj
                    Rat shifted = want - 1;
                    Int den = shifted.get_den() * Int(n);
                    Int w;
                    mpz_fdiv_q(w.get_mpz_t(), shifted.get_num().get_mpz_t(),
                               den.get_mpz_t());
                    gj = w - 1;
                }
                g_eff[*j] = Rat(gj);
                done = true;
            }
            break;
        }
    }
    if (!done) return {Verdict::Inconclusive, std::nullopt};

    std::map<Idx, Rat> entries;
    for (auto& [i, v] : g_eff)
        if (v != 0) entries[i] = v;
    GroupElement g = GroupElement::make(shape, std::move(entries));
    GroupElement x = a - g.scaled(Rat(n));
    if (!(x.abs() < bound)) return {Verdict::Inconclusive, std::nullopt};
    return {Verdict::True, g};
}

AxiomReport sampled_closedness_axiom(
    const ShapePtr& shape, long n,
    const std::vector<std::pair<GroupElement, GroupElement>>& samples) {
    AxiomReport report;
    report.shape = shape;
    report.n = n;
    report.known_status = shape_closedness(shape);
    for (const auto& [a, b] : samples) {
        AxiomSample rec{a,      b,            Verdict::Inconclusive, std::nullopt,
                        false,  std::nullopt, Verdict::Inconclusive};
        AntecedentDecision dec = decide_axiom_antecedent(a, b, n);
        rec.antecedent = dec.verdict;
        rec.approximant = dec.witness;
        auto q = is_n_divisible(a, n);
        rec.consequent = q.has_value();
        rec.quotient = q;
        if (dec.verdict == Verdict::Inconclusive)
            rec.implication = Verdict::Inconclusive;
        else if (dec.verdict == Verdict::False)
            rec.implication = Verdict::True;
        else
            rec.implication = rec.consequent ? Verdict::True : Verdict::False;
        if (rec.implication == Verdict::False &&
            report.known_status == Closedness::Closed)
            report.consistent = false;
        report.samples.push_back(std::move(rec));
    }
    return report;
}

} // namespace hahn
