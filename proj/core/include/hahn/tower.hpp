#pragma once

#include <optional>
#include <vector>

#include "hahn/hensel.hpp"

namespace hahn {

/// Finite-depth model of the iterated series-extension tower. Stage m lives
/// inside series over H_m, the Hahn sum over indices [-2m+1, 0] with scalar
/// component A; each stage adds a fresh two-index block at the most negative
/// (most significant) end. Stage 0 is the rational constants.
struct TowerConfig {
    Scalar component = Scalar::Int;
    int depth = 4;
    long margin_steps = 4;

    ShapePtr stage_shape(int m) const {
        return GroupShape::hahn_sum(IndexRange{-2 * m + 1, 0}, component);
    }
    ShapePtr ambient_shape() const { return stage_shape(depth); }
    /// Most significant index pair of stage m's fresh block.
    std::pair<Idx, Idx> block(int m) const { return {-2 * m + 1, -2 * m + 2}; }
};

/// Compatible coordinate tuple (x_0, ..., x_M); nullopt marks the infinity
/// coordinate of elements outside a stage valuation ring. Coordinates are
/// series over the stage shapes, infinity markers form a (possibly empty)
/// prefix, and exact zeros propagate downward.
struct TowerElement {
    TowerConfig config;
    std::vector<std::optional<SeriesElement>> coords; // index = stage

    bool is_infinity(int stage) const { return !coords[stage].has_value(); }
    const SeriesElement& at(int stage) const { return *coords[stage]; }
    /// True iff every coordinate is exactly zero.
    bool is_zero() const;
};

/// One-step stage residue: keeps exactly the terms whose fresh-block
/// coordinates vanish, reinterpreted one stage down; nullopt (infinity) when
/// the stage valuation is negative. Composition handles j < i-1.
std::optional<SeriesElement> psi_project(const TowerConfig& cfg,
                                         const SeriesElement& x, int from_stage,
                                         int to_stage);

/// Embed a stage-j series into a higher stage (same entries, wider shape).
SeriesElement stage_embed(const TowerConfig& cfg, const SeriesElement& x,
                          int to_stage);

TowerElement make_tower(const TowerConfig& cfg, const SeriesElement& top);

TowerElement tower_add(const TowerElement& x, const TowerElement& y);
TowerElement tower_mul(const TowerElement& x, const TowerElement& y);

struct TowerValuation {
    std::optional<GroupElement> value; // nullopt = +infinity (zero element)
    int first_finite_stage = 0;        // least stage outside {0, infinity}
    bool in_valuation_ring = false;    // x_n != infinity
    bool in_maximal_ideal = false;     // x_n = 0 with higher data nonzero
};

/// Valuation of a tower element at coarsening level n: the full valuation for
/// n = 0, its image in the quotient by entries above -2n for n >= 1.
TowerValuation tower_valuation(const TowerElement& x, int n);

struct StageLift {
    int stage = 0;
    GroupElement initial_residual;
    std::optional<GroupElement> final_residual; // nullopt = exact
    int steps = 0;
};

struct RootLiftCertificate {
    long n = 0;
    TowerElement root;
    std::vector<StageLift> stage_lifts;
};

/// Stagewise root of T^{n+1} + T^n + a^{(n-1)} T^{n-1} + ... + a^{(0)} with
/// every coefficient in the level-n maximal ideal: the root is -1 through
/// stage n and is Newton-lifted stage by stage above it, with the one-step
/// residue of each stage root equal to the previous stage root.
RootLiftCertificate lift_root_through_stages(
    const TowerConfig& cfg, const std::vector<TowerElement>& coeffs, long n);

struct NonHenselianCertificate {
    int stage = 0;
    long p = 0;
    long q = 0;
    GroupRingElement prime_elem; // t^{(b,0)} + t^{(0,b)} + 1 on the fresh block
    PrimeCertificate prime_cert;
    EisensteinCertificate eisenstein;
    RatPolynomial residue_polynomial;
    Rat simple_root;
    LiftResult lifted_root;
    std::vector<long> degree_samples; // products of primes <= p, none divisible by q
};

/// Degree-q obstruction at a stage: an Eisenstein-irreducible polynomial whose
/// residue has a simple root, so the root exists in the stage's series closure
/// but its degree q is coprime to every admissible extension degree.
NonHenselianCertificate non_henselian_certificate(const TowerConfig& cfg, int stage,
                                                  long p, long q, const Rat& b);

struct ValueGroupRecord {
    GroupElement sample;
    GroupElement computed;
    bool ok = false;
    std::string note;
};

struct ValueGroupReport {
    int level = 0;
    std::vector<ValueGroupRecord> unit_records;      // v_0 of units lands in block
    std::vector<ValueGroupRecord> surjection_records; // monomial preimages
    bool boundary_flagged = false;
    unsigned long seed = 0;
    bool all_ok() const;
};

/// Sampled check that units at level n have full valuation inside the top
/// block [-2n+1, 0], and that monomials hit a sampled subset of the level-n
/// value group (indices in [-2M+1, -2n]).
ValueGroupReport value_group_report(const TowerConfig& cfg, int level, int samples,
                                    unsigned long seed);

} // namespace hahn
