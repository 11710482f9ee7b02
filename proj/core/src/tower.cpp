#include "hahn/tower.hpp"

#include "hahn/errors.hpp"
#include "hahn/rng.hpp"

namespace hahn {

namespace {

/// Lexicographic position of g's fresh-block pair at stage m relative to zero:
/// the sign of (g(-2m+1), g(-2m+2)).
int block_sign(const TowerConfig& cfg, const GroupElement& g, int m) {
    auto [b1, b2] = cfg.block(m);
    Rat c1 = g.effective(b1);
    if (c1 != 0) return sign(c1);
    return sign(g.effective(b2));
}

bool block_is_zero(const TowerConfig& cfg, const GroupElement& g, int m) {
    auto [b1, b2] = cfg.block(m);
    return g.effective(b1) == 0 && g.effective(b2) == 0;
}

GroupElement reshape(const GroupElement& g, const ShapePtr& shape) {
    return GroupElement::make(shape, g.entries(), g.dist_multiple());
}

SeriesElement reshape_series(const SeriesElement& x, const ShapePtr& shape) {
    TermMap terms;
    for (const auto& [g, c] : x.terms()) terms.emplace(reshape(g, shape), c);
    std::optional<GroupElement> cut;
    if (x.cutoff()) cut = reshape(*x.cutoff(), shape);
    return SeriesElement::make(shape, std::move(terms), std::move(cut));
}

/// One-step residue from stage i to stage i-1.
std::optional<SeriesElement> project_once(const TowerConfig& cfg,
                                          const SeriesElement& x, int i) {
    ShapePtr down = cfg.stage_shape(i - 1);
    if (x.is_exact_zero()) return SeriesElement::zero(down);

    if (x.terms().empty()) {
        // Zero precision: the hidden tail sits at or above the cutoff.
        const GroupElement& cut = *x.cutoff();
        int cs = block_sign(cfg, cut, i);
        if (cs > 0) return SeriesElement::zero(down); // tail has positive stage value
        if (cs == 0) return SeriesElement::make(down, {}, reshape(cut, down));
        throw PrecisionError("stage residue indeterminate: cutoff below the "
                             "stage valuation ring");
    }

    const GroupElement v = *x.valuation();
    if (block_sign(cfg, v, i) < 0) return std::nullopt; // outside the stage ring

    TermMap kept;
    for (const auto& [g, c] : x.terms())
        if (block_is_zero(cfg, g, i)) kept.emplace(reshape(g, down), c);

    std::optional<GroupElement> cut;
    if (x.cutoff()) {
        int cs = block_sign(cfg, *x.cutoff(), i);
        if (cs == 0)
            cut = reshape(*x.cutoff(), down);
        else if (cs < 0)
            throw PrecisionError("stage residue indeterminate below the cutoff");
        // cs > 0: every tail term carries a positive block, the residue is exact
    }
    return SeriesElement::make(down, std::move(kept), std::move(cut));
}

} // namespace

bool TowerElement::is_zero() const {
    for (const auto& c : coords)
        if (!c || !c->is_exact_zero()) return false;
    return true;
}

SeriesElement stage_embed(const TowerConfig& cfg, const SeriesElement& x,
                          int to_stage) {
    return reshape_series(x, cfg.stage_shape(to_stage));
}

std::optional<SeriesElement> psi_project(const TowerConfig& cfg,
                                         const SeriesElement& x, int from_stage,
                                         int to_stage) {
    if (to_stage > from_stage)
        throw DomainError("psi_project: target stage above the source stage");
    if (from_stage > cfg.depth) throw DomainError("psi_project: stage beyond depth");
    std::optional<SeriesElement> cur = x;
    for (int i = from_stage; i > to_stage; --i) {
        cur = project_once(cfg, *cur, i);
        if (!cur) return std::nullopt;
    }
    return cur;
}

TowerElement make_tower(const TowerConfig& cfg, const SeriesElement& top) {
    if (*top.shape() != *cfg.ambient_shape())
        throw ShapeMismatchError("make_tower: series is not over the ambient shape");
    std::vector<std::optional<SeriesElement>> coords(cfg.depth + 1);
    coords[cfg.depth] = top;
    for (int i = cfg.depth; i > 0; --i) {
        if (!coords[i]) {
            coords[i - 1] = std::nullopt;
            continue;
        }
        coords[i - 1] = project_once(cfg, *coords[i], i);
    }
    return TowerElement{cfg, std::move(coords)};
}

TowerElement tower_add(const TowerElement& x, const TowerElement& y) {
    return make_tower(x.config, x.at(x.config.depth) + y.at(y.config.depth));
}

TowerElement tower_mul(const TowerElement& x, const TowerElement& y) {
    return make_tower(x.config, x.at(x.config.depth) * y.at(y.config.depth));
}

TowerValuation tower_valuation(const TowerElement& x, int n) {
    const TowerConfig& cfg = x.config;
    if (n < 0 || n > cfg.depth) throw DomainError("tower_valuation: bad level");

    int ell = -1;
    for (int m = 0; m <= cfg.depth; ++m) {
        if (x.is_infinity(m)) continue;
        const SeriesElement& xm = x.at(m);
        if (xm.is_exact_zero()) continue;
        if (xm.terms().empty())
            throw PrecisionError("tower valuation indeterminate at stage " +
                                 std::to_string(m));
        ell = m;
        break;
    }

    TowerValuation out{std::nullopt, 0, false, false};
    out.in_valuation_ring = !x.is_infinity(n);
    out.in_maximal_ideal =
        out.in_valuation_ring && x.at(n).is_exact_zero() && ell >= 0;
    if (ell < 0) return out; // the zero element: valuation +infinity

    out.first_finite_stage = ell;
    GroupElement v0 = reshape(*x.at(ell).valuation(), cfg.ambient_shape());
    out.value = n == 0 ? v0 : quotient_project(v0, -2 * n);
    return out;
}

RootLiftCertificate lift_root_through_stages(
    const TowerConfig& cfg, const std::vector<TowerElement>& coeffs, long n) {
    if (n < 1) throw DomainError("root lift: n must be >= 1");
    if (n + 1 > cfg.depth)
        throw DomainError("root lift: depth must exceed the ideal level");
    if (coeffs.size() != static_cast<std::size_t>(n))
        throw DomainError("root lift: expected n coefficients below T^{n-1}");
    for (const auto& c : coeffs) {
        int nn = static_cast<int>(n);
        if (c.is_infinity(nn) || !c.at(nn).is_exact_zero())
            throw DomainError("root lift: coefficients must lie in the level-n "
                              "maximal ideal");
    }

    auto stage_poly = [&](int i) {
        ShapePtr shape = cfg.stage_shape(i);
        SeriesPolynomial f;
        for (long j = 0; j < n; ++j) {
            if (coeffs[j].is_infinity(i))
                throw DomainError("root lift: coefficient infinite at stage " +
                                  std::to_string(i));
            f.coeffs.push_back(coeffs[j].at(i));
        }
        f.coeffs.push_back(SeriesElement::constant(shape, Rat(1))); // T^n
        f.coeffs.push_back(SeriesElement::constant(shape, Rat(1))); // T^{n+1}
        return f;
    };

    std::vector<std::optional<SeriesElement>> roots(cfg.depth + 1);
    std::vector<StageLift> lifts;
    for (int i = 0; i <= static_cast<int>(n); ++i)
        roots[i] = SeriesElement::constant(cfg.stage_shape(i), Rat(-1));

    for (int i = static_cast<int>(n) + 1; i <= cfg.depth; ++i) {
        SeriesPolynomial f = stage_poly(i);
        SeriesElement y_prev = stage_embed(cfg, *roots[i - 1], i);
        SeriesElement fy = f.eval(y_prev);
        if (fy.is_exact_zero()) {
            roots[i] = y_prev;
            lifts.push_back(StageLift{i, GroupElement::zero(cfg.stage_shape(i)),
                                      std::nullopt, 0});
            continue;
        }
        if (fy.is_zero_precision()) {
            // The previous stage root already solves this stage's polynomial
            // to the precision it carries; nothing visible is left to correct.
            roots[i] = y_prev;
            lifts.push_back(StageLift{i, *fy.cutoff(), *fy.cutoff(), 0});
            continue;
        }
        GroupElement v0 = *fy.valuation();
        if (v0.sign() <= 0)
            throw Error("root lift: stage polynomial does not vanish at the "
                        "previous stage root");
        GroupElement target = v0.scaled(Rat(1 + cfg.margin_steps));
        if (fy.cutoff() && *fy.cutoff() < target)
            target = *fy.cutoff(); // precision inherited from earlier stages
        LiftResult lifted = newton_lift(f, y_prev, target);
        // One-step residue compatibility with the previous stage root.
        auto back = project_once(cfg, lifted.root, i);
        if (!back)
            throw Error("root lift: lifted root left the stage valuation ring");
        SeriesElement drift = *back - *roots[i - 1];
        if (!drift.terms().empty())
            throw Error("root lift: stage residue drifted from the previous root");
        lifts.push_back(StageLift{i, v0, lifted.residual_valuation, lifted.steps});
        roots[i] = std::move(lifted.root);
    }

    TowerElement root{cfg, std::move(roots)};
    // Compatibility of the assembled tuple, coordinate by coordinate.
    for (int i = 1; i <= cfg.depth; ++i) {
        auto down = project_once(cfg, root.at(i), i);
        if (!down) throw Error("root lift: assembled root is incompatible");
        SeriesElement d = *down - root.at(i - 1);
        if (!d.terms().empty())
            throw Error("root lift: assembled root is incompatible");
    }
    return RootLiftCertificate{n, std::move(root), std::move(lifts)};
}

NonHenselianCertificate non_henselian_certificate(const TowerConfig& cfg, int stage,
                                                  long p, long q, const Rat& b) {
    if (stage < 1 || stage > cfg.depth)
        throw DomainError("non_henselian_certificate: stage out of range");
    if (p < 2) throw DomainError("non_henselian_certificate: p must be >= 2");
    {
        Int qz(q);
        if (mpz_probab_prime_p(qz.get_mpz_t(), 40) == 0)
            throw DomainError("non_henselian_certificate: q must be prime");
    }
    if (q <= p)
        throw DomainError("non_henselian_certificate: q must exceed p");
    if (sign(b) <= 0)
        throw DomainError("non_henselian_certificate: b must be positive");

    ShapePtr shape = cfg.stage_shape(stage);
    auto [b1, b2] = cfg.block(stage);
    GroupElement left = GroupElement::unit(shape, b1, b);   // (b, 0)
    GroupElement right = GroupElement::unit(shape, b2, b);  // (0, b)

    GroupRingElement a = GroupRingElement::monomial(left) +
                         GroupRingElement::monomial(right) +
                         GroupRingElement::constant(shape, Rat(1));
    auto prime = prime_certificate(a);
    if (!prime)
        throw Error("non_henselian_certificate: prime certificate rejected: " +
                    prime.reason);

    // g(T) = T^q + a T^{q-1} + a t^{(b,0)} (T^{q-2} + ... + T + 1)
    GroupRingElement shifted = a * GroupRingElement::monomial(left);
    RingPolynomial g;
    for (long i = 0; i <= q - 2; ++i) g.coeffs.push_back(shifted);
    g.coeffs.push_back(a);
    g.coeffs.push_back(GroupRingElement::constant(shape, Rat(1)));

    auto eis = eisenstein_check(g, a);
    if (!eis)
        throw Error("non_henselian_certificate: Eisenstein check failed: " +
                    eis.reason);

    RatPolynomial gbar = residue_poly(g);
    Rat root(-1);
    if (!simple_root_check(gbar, root))
        throw Error("non_henselian_certificate: residue root is not simple");

    SeriesPolynomial gs = to_series_poly(g);
    SeriesElement g_at_root = gs.eval(SeriesElement::constant(shape, root));
    GroupElement v0 = *g_at_root.valuation();
    LiftResult y = hensel_lift(gs, root, v0.scaled(Rat(1 + cfg.margin_steps)));

    // Admissible degrees are products of primes <= p; q divides none of them.
    std::vector<long> samples;
    for (long m = 1; m <= 512; ++m) {
        long r = m;
        for (long f = 2; f <= p; ++f)
            while (r % f == 0) r /= f;
        if (r == 1) {
            if (m % q == 0)
                throw Error("non_henselian_certificate: degree arithmetic failed");
            samples.push_back(m);
        }
    }

    return NonHenselianCertificate{stage,
                                   p,
                                   q,
                                   std::move(a),
                                   std::move(*prime.value),
                                   std::move(*eis.value),
                                   std::move(gbar),
                                   std::move(root),
                                   std::move(y),
                                   std::move(samples)};
}

bool ValueGroupReport::all_ok() const {
    for (const auto& r : unit_records)
        if (!r.ok) return false;
    for (const auto& r : surjection_records)
        if (!r.ok) return false;
    return true;
}

ValueGroupReport value_group_report(const TowerConfig& cfg, int level, int samples,
                                    unsigned long seed) {
    if (level < 0 || level > cfg.depth)
        throw DomainError("value_group_report: bad level");
    ValueGroupReport report{level, {}, {}, false, seed};
    Sampler sampler(seed);
    ShapePtr ambient = cfg.ambient_shape();

    // Units at the level: elements whose full valuation lies in the top block
    // [-2 level + 1, 0]; check the computed tower valuation agrees.
    for (int i = 0; i < samples; ++i) {
        std::map<Idx, Rat> entries;
        if (level > 0) {
            int support = static_cast<int>(sampler.uniform(1, 3));
            for (int t = 0; t < support; ++t) {
                Idx idx = static_cast<Idx>(sampler.uniform(-2 * level + 1, 0));
                entries[idx] = sampler.coefficient(cfg.component);
            }
        }
        GroupElement g = GroupElement::make(ambient, std::move(entries));
        TowerElement unit = make_tower(cfg, SeriesElement::monomial(g));
        TowerValuation tv = tower_valuation(unit, 0);
        bool ok = tv.value.has_value();
        std::string note;
        if (ok) {
            auto vm = tv.value->vmin();
            ok = !vm || *vm >= -2 * level + 1;
            if (!ok) note = "valuation escapes the level block";
            bool unit_flags = !unit.is_infinity(level) &&
                              !unit.at(level).is_exact_zero();
            if (!unit_flags) {
                ok = false;
                note = "element is not a unit at the level";
            }
        }
        report.unit_records.push_back(
            ValueGroupRecord{g, tv.value.value_or(GroupElement::zero(ambient)), ok,
                             std::move(note)});
    }

    // Surjectivity: sampled elements of the level value group (indices in
    // [-2M+1, -2 level]) are hit by monomial preimages.
    Idx lo = -2 * cfg.depth + 1, hi = -2 * level;
    for (int i = 0; i < samples; ++i) {
        if (hi < lo) {
            report.boundary_flagged = true; // level == depth: trivial target
            break;
        }
        std::map<Idx, Rat> entries;
        int support = static_cast<int>(sampler.uniform(1, 3));
        for (int t = 0; t < support; ++t) {
            Idx idx = static_cast<Idx>(sampler.uniform(lo, hi));
            entries[idx] = sampler.coefficient(cfg.component);
        }
        GroupElement g = GroupElement::make(ambient, std::move(entries));
        TowerElement pre = make_tower(cfg, SeriesElement::monomial(g));
        TowerValuation tv = tower_valuation(pre, level);
        GroupElement expected =
            level == 0 ? g : quotient_project(g, -2 * level);
        bool ok = tv.value && *tv.value == expected;
        report.surjection_records.push_back(ValueGroupRecord{
            g, tv.value.value_or(GroupElement::zero(ambient)), ok,
            ok ? "" : "monomial preimage has the wrong level valuation"});
    }
    if (level == cfg.depth) report.boundary_flagged = true;
    return report;
}

} // namespace hahn
