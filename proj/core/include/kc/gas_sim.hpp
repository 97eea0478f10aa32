#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kc/geometry.hpp"
#include "kc/phase_function.hpp"
#include "kc/rng.hpp"
#include "kc/scaling.hpp"

namespace kc {

struct Particle {
    int id = 0;
    Position x;
    Velocity v;
    int tag = 0;  // 0 background, 1 tagged
};

struct CollisionEvent {
    double time = 0.0;
    int a = 0, b = 0;       // particle ids, a < b
    Vec omega;              // contact normal (x_a - x_b)/eps at impact
    Velocity pre_a, pre_b;
    Velocity post_a, post_b;
    bool grazing = false;   // transmitted without scattering
    bool tie_broken = false;  // scheduled by pair-id tie rule
};

struct CollisionLog {
    std::vector<CollisionEvent> events;  // strictly increasing times
};

/// Admissible hard-sphere configuration: pairwise torus distance > epsilon.
struct SystemState {
    ScalingConfig cfg;
    std::vector<Particle> particles;
    double time = 0.0;

    double total_energy() const;
    Vec total_momentum() const;
    /// Smallest pairwise torus distance (infinity for < 2 particles).
    double min_pair_distance() const;
    int tagged_count() const;
};

struct sampling_failure : std::runtime_error {
    double acceptance_estimate;
    sampling_failure(const std::string& msg, double acc)
        : std::runtime_error(msg), acceptance_estimate(acc) {}
};
struct runaway_dynamics : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExclusionMode {
    RejectWhole,   // exact: redraw the whole configuration until admissible
    Sequential,    // approximate: redraw one particle's position until it fits
    Off,           // ideal-gas sampling (for Poisson/Campbell oracles)
};

struct SamplerOptions {
    ExclusionMode exclusion = ExclusionMode::RejectWhole;
    std::uint64_t max_attempts = 100000;
};

/// Grand-canonical draw: background count ~ Poisson(mu) with uniform positions and
/// Maxwellian velocities; tagged count ~ Poisson(lambda * int M_beta phi0) with states
/// thinned against the declared bound of phi0. Exclusion handled per `opts`.
SystemState sample_initial_state(const ScalingConfig& cfg, const PhaseFunction& phi0, Rng& rng,
                                 const SamplerOptions& opts = {});

/// Mean of phi0 against the Maxwellian (and uniform x), by fixed quasi-random sweep.
double maxwellian_mean(const PhaseFunction& phi0, int d, double beta, int n_points = 200000);

/// Earliest contact of the pair within (0, horizon], using the nearest image.
/// Caller must keep horizon below half the pair's torus-crossing time.
std::optional<std::pair<double, Vec>> predict_collision(const Particle& p, const Particle& q,
                                                        double epsilon, double horizon);

struct EvolveOptions {
    std::uint64_t max_events = 1000000;
    double snapshot_dt = 0.0;  // > 0: record state snapshots at this cadence
};

struct EvolveResult {
    SystemState state;
    CollisionLog log;
    std::vector<SystemState> snapshots;
};

/// Event-driven evolution to t_end: windowed O(N^2) predictions with a priority
/// queue, re-predictions after each event, exact pairwise scattering.
EvolveResult evolve(const SystemState& initial, double t_end, const EvolveOptions& opts = {});

struct GraphSummary {
    int n_particles = 0;
    int n_components = 0;
    std::vector<int> component_of;          // per particle index
    int first_collision_edges = 0;          // distinct pairs that collided
    std::vector<std::size_t> recollisions;  // event indices of repeat encounters of a pair
};

/// Connected components and recollision list of the collision graph up to `upto`.
GraphSummary collision_graph(const SystemState& ref, const CollisionLog& log, double upto);

struct CycleCensus {
    std::uint64_t collisions = 0;
    std::uint64_t cycles = 0;  // collisions whose endpoints were already connected
    std::optional<double> first_cycle_time;
    std::uint64_t cycles_with_tagged = 0;  // cycle-closing events in a component with a tag
};

/// A cycle is a collision between already-connected particles (repeat pairs included).
CycleCensus cycle_census(const SystemState& ref, const CollisionLog& log);

/// CSV export: one line per event.
void write_collision_log_csv(const std::string& path, const SystemState& ref,
                             const CollisionLog& log);
/// CSV export with a header naming d, eps, mu, lambda, beta, seed.
void write_state_csv(const std::string& path, const SystemState& s, std::uint64_t seed);

}  // namespace kc
