#include "kc/gas_sim.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "kc/io_util.hpp"

namespace kc {

double SystemState::total_energy() const {
    double e = 0.0;
    for (const auto& p : particles) e += norm2(p.v);
    return e;
}

Vec SystemState::total_momentum() const {
    Vec m = Vec::zero(cfg.d);
    for (const auto& p : particles) m += p.v;
    return m;
}

double SystemState::min_pair_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < particles.size(); ++i)
        for (std::size_t j = i + 1; j < particles.size(); ++j)
            best = std::min(best, torus_distance(particles[i].x, particles[j].x));
    return best;
}

int SystemState::tagged_count() const {
    int n = 0;
    for (const auto& p : particles) n += p.tag;
    return n;
}

double maxwellian_mean(const PhaseFunction& phi0, int d, double beta, int n_points) {
    // fixed Halton sweep: deterministic, good enough for Poisson intensities
    auto halton = [](int idx, int base) {
        double f = 1.0, r = 0.0;
        while (idx > 0) {
            f /= base;
            r += f * (idx % base);
            idx /= base;
        }
        return r;
    };
    static const int primes[8] = {2, 3, 5, 7, 11, 13, 17, 19};
    auto inv_norm = [](double u) {  // Acklam-style inverse normal CDF, ~1e-9 accurate
        static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
        static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
        static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
        static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
        double q, r;
        if (u < 0.02425) {
            q = std::sqrt(-2 * std::log(u));
            return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
                   ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1);
        }
        if (u > 1 - 0.02425) {
            q = std::sqrt(-2 * std::log(1 - u));
            return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
                   ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1);
        }
        q = u - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    };
    double acc = 0.0;
    double sd = 1.0 / std::sqrt(beta);
    for (int k = 1; k <= n_points; ++k) {
        PhasePoint p;
        p.t = 0.0;
        p.x = Vec::zero(d);
        p.v = Vec::zero(d);
        int dim = 0;
        for (int i = 0; i < d; ++i) p.x[i] = halton(k, primes[dim++]);
        for (int i = 0; i < d; ++i) {
            double u = halton(k, primes[dim++]);
            u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
            p.v[i] = sd * inv_norm(u);
        }
        p.tag = 1;
        acc += phi0(p);
    }
    return acc / n_points;
}

namespace {

bool any_overlap(const std::vector<Particle>& ps, double eps) {
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            if (torus_distance(ps[i].x, ps[j].x) <= eps) return true;
    return false;
}

bool overlaps_any(const std::vector<Particle>& ps, std::size_t upto, const Position& x,
                  double eps) {
    for (std::size_t i = 0; i < upto; ++i)
        if (torus_distance(ps[i].x, x) <= eps) return true;
    return false;
}

}  // namespace

SystemState sample_initial_state(const ScalingConfig& cfg, const PhaseFunction& phi0, Rng& rng,
                                 const SamplerOptions& opts) {
    const int d = cfg.d;
    const double bound = phi0.declared_bound();
    const bool gauss_class = phi0.growth_class() == GrowthClass::GaussQuarter;
    // dominating tagged intensity: lambda*C*M_beta (bounded class) or
    // lambda*C*2^{d/2}*M_{beta/2} (quarter-Gaussian class); thinning yields the
    // exact Poisson process with intensity lambda*M_beta*phi0.
    const double prop_mass = gauss_class ? bound * std::pow(2.0, d / 2.0) : bound;

    auto draw_all = [&](std::vector<Particle>& ps) {
        ps.clear();
        std::uint64_t nb = rng.poisson(cfg.mu);
        for (std::uint64_t i = 0; i < nb; ++i) {
            Particle p;
            p.id = static_cast<int>(ps.size());
            p.x = rng.uniform_torus(d);
            p.v = rng.maxwellian(d, cfg.beta);
            p.tag = 0;
            ps.push_back(p);
        }
        std::uint64_t np = rng.poisson(cfg.lambda * prop_mass);
        for (std::uint64_t i = 0; i < np; ++i) {
            Position x = rng.uniform_torus(d);
            Velocity v = gauss_class ? rng.maxwellian(d, cfg.beta / 2.0)
                                     : rng.maxwellian(d, cfg.beta);
            double f = phi0(0.0, x, v, 1);
            if (f < 0.0) throw contract_error("sample_initial_state: phi0 is negative");
            double accept = gauss_class ? std::exp(-cfg.beta * norm2(v) / 4.0) * f / bound
                                        : f / bound;
            if (accept > 1.0 + 1e-12)
                throw contract_error("sample_initial_state: phi0 exceeds its declared bound");
            if (rng.uniform() < accept) {
                Particle p;
                p.id = static_cast<int>(ps.size());
                p.x = x;
                p.v = v;
                p.tag = 1;
                ps.push_back(p);
            }
        }
    };

    SystemState s;
    s.cfg = cfg;
    s.time = 0.0;

    if (opts.exclusion == ExclusionMode::Off) {
        draw_all(s.particles);
        return s;
    }
    if (opts.exclusion == ExclusionMode::RejectWhole) {
        for (std::uint64_t attempt = 1; attempt <= opts.max_attempts; ++attempt) {
            draw_all(s.particles);
            if (!any_overlap(s.particles, cfg.epsilon)) return s;
        }
        throw sampling_failure(
            "sample_initial_state: rejection budget exhausted (whole-configuration mode)",
            1.0 / static_cast<double>(opts.max_attempts));
    }
    // Sequential insertion: approximate; each particle redraws until it fits.
    draw_all(s.particles);
    for (std::size_t i = 0; i < s.particles.size(); ++i) {
        std::uint64_t tries = 0;
        while (overlaps_any(s.particles, i, s.particles[i].x, cfg.epsilon)) {
            if (++tries > opts.max_attempts)
                throw sampling_failure("sample_initial_state: insertion budget exhausted",
                                       1.0 / static_cast<double>(opts.max_attempts));
            s.particles[i].x = rng.uniform_torus(d);
        }
    }
    return s;
}

std::optional<std::pair<double, Vec>> predict_collision(const Particle& p, const Particle& q,
                                                        double epsilon, double horizon) {
    Vec dx = min_image_displacement(q.x, p.x);  // p relative to q
    Vec dv = p.v - q.v;
    double a = norm2(dv);
    if (a <= 0.0) return std::nullopt;  // equal velocities: constant separation
    double b = dot(dx, dv);
    if (b >= 0.0) return std::nullopt;  // receding or tangent
    double c = norm2(dx) - epsilon * epsilon;
    double disc = b * b - a * c;
    if (disc <= 0.0) return std::nullopt;
    double t = (-b - std::sqrt(disc)) / a;
    if (t <= 1e-15 || t > horizon) return std::nullopt;
    Vec at_contact = dx + t * dv;
    double n = norm(at_contact);
    return std::make_pair(t, (1.0 / n) * at_contact);
}

namespace {

struct PendingEvent {
    double t;
    int a, b;
    std::uint64_t gen_a, gen_b;
};
struct EventOrder {
    bool operator()(const PendingEvent& x, const PendingEvent& y) const {
        if (x.t != y.t) return x.t > y.t;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    }
};

}  // namespace

EvolveResult evolve(const SystemState& initial, double t_end, const EvolveOptions& opts) {
    if (t_end < initial.time) throw contract_error("evolve: t_end before state time");
    EvolveResult res;
    res.state = initial;
    auto& ps = res.state.particles;
    const double eps = initial.cfg.epsilon;
    const int n = static_cast<int>(ps.size());
    double now = initial.time;

    std::vector<std::uint64_t> gen(n, 0);
    double next_snapshot = opts.snapshot_dt > 0.0 ? initial.time : std::numeric_limits<double>::infinity();

    auto advance_all = [&](double t) {
        double dt = t - now;
        if (dt <= 0.0) { now = t; return; }
        for (auto& p : ps) {
            for (int i = 0; i < p.x.dim(); ++i) p.x[i] += dt * p.v[i];
            p.x = wrap_position(p.x);
        }
        now = t;
    };
    auto take_snapshots_until = [&](double t) {
        while (next_snapshot <= t + 1e-15) {
            advance_all(next_snapshot);
            res.state.time = now;
            res.snapshots.push_back(res.state);
            next_snapshot += opts.snapshot_dt;
        }
    };

    std::uint64_t n_events = 0;
    while (now < t_end - 1e-15) {
        double vmax = 0.0;
        for (const auto& p : ps) vmax = std::max(vmax, norm(p.v));
        double guard = 2.0 * std::max(vmax, 1e-9);
        double window = std::max((0.5 - eps) / (4.0 * guard), 1e-9);
        double w_end = std::min(t_end, now + window);

        std::priority_queue<PendingEvent, std::vector<PendingEvent>, EventOrder> queue;
        auto predict_pair = [&](int i, int j) {
            if (i > j) std::swap(i, j);
            auto hit = predict_collision(ps[i], ps[j], eps, w_end - now);
            if (hit) queue.push({now + hit->first, i, j, gen[i], gen[j]});
        };
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) predict_pair(i, j);

        bool truncated = false;
        while (!queue.empty() && !truncated) {
            // gather ties within 1e-12 and take the lowest pair id
            PendingEvent ev = queue.top();
            queue.pop();
            if (ev.gen_a != gen[ev.a] || ev.gen_b != gen[ev.b]) continue;
            bool tie = false;
            std::vector<PendingEvent> tied;
            while (!queue.empty() && queue.top().t - ev.t < 1e-12) {
                PendingEvent other = queue.top();
                queue.pop();
                if (other.gen_a != gen[other.a] || other.gen_b != gen[other.b]) continue;
                if (std::make_pair(other.a, other.b) < std::make_pair(ev.a, ev.b)) {
                    tied.push_back(ev);
                    ev = other;
                } else {
                    tied.push_back(other);
                }
                tie = true;
            }
            for (const auto& e : tied) queue.push(e);

            take_snapshots_until(ev.t);
            advance_all(ev.t);

            Particle& A = ps[ev.a];
            Particle& B = ps[ev.b];
            Vec dx = min_image_displacement(B.x, A.x);
            Vec omega = (1.0 / norm(dx)) * dx;
            double approach = dot(omega, A.v - B.v);

            CollisionEvent rec;
            rec.time = now;
            rec.a = ev.a;
            rec.b = ev.b;
            rec.omega = omega;
            rec.pre_a = A.v;
            rec.pre_b = B.v;
            rec.tie_broken = tie;
            if (approach < 0.0) {
                auto [va, vb] = scatter(A.v, B.v, omega);
                A.v = va;
                B.v = vb;
                rec.grazing = false;
            } else {
                rec.grazing = true;  // transmitted, velocities unchanged
            }
            rec.post_a = A.v;
            rec.post_b = B.v;
            res.log.events.push_back(rec);
            if (++n_events > opts.max_events)
                throw runaway_dynamics("evolve: event budget exceeded");

            ++gen[ev.a];
            ++gen[ev.b];
            for (int j = 0; j < n; ++j) {
                if (j != ev.a) predict_pair(ev.a, j);
                if (j != ev.b && j != ev.a) predict_pair(ev.b, j);
            }
            // a collision chain may outrun the window guard: stop and re-scan
            if (norm(A.v) > guard || norm(B.v) > guard) truncated = true;
        }
        if (!truncated) {
            take_snapshots_until(w_end);
            advance_all(w_end);
        }
    }
    take_snapshots_until(t_end);
    advance_all(t_end);
    res.state.time = now;
    return res;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    std::vector<char> has_tag;
    explicit UnionFind(const std::vector<Particle>& ps) {
        parent.resize(ps.size());
        has_tag.resize(ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) {
            parent[i] = static_cast<int>(i);
            has_tag[i] = static_cast<char>(ps[i].tag == 1);
        }
    }
    int find(int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[ra] = rb;
        has_tag[rb] = static_cast<char>(has_tag[rb] || has_tag[ra]);
        return true;
    }
};

}  // namespace

GraphSummary collision_graph(const SystemState& ref, const CollisionLog& log, double upto) {
    GraphSummary g;
    g.n_particles = static_cast<int>(ref.particles.size());
    UnionFind uf(ref.particles);
    std::vector<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < log.events.size(); ++k) {
        const auto& e = log.events[k];
        if (e.time > upto) break;
        if (e.grazing) continue;
        auto pr = std::minmax(e.a, e.b);
        std::pair<int, int> pair{pr.first, pr.second};
        if (std::find(seen.begin(), seen.end(), pair) != seen.end())
            g.recollisions.push_back(k);
        else
            seen.push_back(pair);
        uf.unite(e.a, e.b);
    }
    g.first_collision_edges = static_cast<int>(seen.size());
    g.component_of.resize(ref.particles.size());
    std::vector<int> roots;
    for (std::size_t i = 0; i < ref.particles.size(); ++i) {
        int r = uf.find(static_cast<int>(i));
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            g.component_of[i] = static_cast<int>(roots.size()) - 1;
        } else {
            g.component_of[i] = static_cast<int>(it - roots.begin());
        }
    }
    g.n_components = static_cast<int>(roots.size());
    return g;
}

CycleCensus cycle_census(const SystemState& ref, const CollisionLog& log) {
    CycleCensus c;
    UnionFind uf(ref.particles);
    for (const auto& e : log.events) {
        if (e.grazing) continue;
        ++c.collisions;
        if (uf.find(e.a) == uf.find(e.b)) {
            ++c.cycles;
            if (!c.first_cycle_time) c.first_cycle_time = e.time;
            if (uf.has_tag[uf.find(e.a)]) ++c.cycles_with_tagged;
        } else {
            uf.unite(e.a, e.b);
        }
    }
    return c;
}

void write_collision_log_csv(const std::string& path, const SystemState& ref,
                             const CollisionLog& log) {
    auto out = open_out(path);
    const int d = ref.cfg.d;
    out << "t,pair_a,pair_b";
    for (int i = 0; i < d; ++i) out << ",omega" << i;
    for (int i = 0; i < d; ++i) out << ",pre_a" << i;
    for (int i = 0; i < d; ++i) out << ",pre_b" << i;
    for (int i = 0; i < d; ++i) out << ",post_a" << i;
    for (int i = 0; i < d; ++i) out << ",post_b" << i;
    out << ",grazing\n";
    for (const auto& e : log.events) {
        out << fmt(e.time) << "," << e.a << "," << e.b;
        for (int i = 0; i < d; ++i) out << "," << fmt(e.omega[i]);
        for (int i = 0; i < d; ++i) out << "," << fmt(e.pre_a[i]);
        for (int i = 0; i < d; ++i) out << "," << fmt(e.pre_b[i]);
        for (int i = 0; i < d; ++i) out << "," << fmt(e.post_a[i]);
        for (int i = 0; i < d; ++i) out << "," << fmt(e.post_b[i]);
        out << "," << (e.grazing ? 1 : 0) << "\n";
    }
}

void write_state_csv(const std::string& path, const SystemState& s, std::uint64_t seed) {
    auto out = open_out(path);
    const int d = s.cfg.d;
    out << "# d=" << d << " epsilon=" << fmt(s.cfg.epsilon) << " mu=" << fmt(s.cfg.mu)
        << " lambda=" << fmt(s.cfg.lambda) << " beta=" << fmt(s.cfg.beta) << " seed=" << seed
        << " time=" << fmt(s.time) << "\n";
    out << "id,tag";
    for (int i = 0; i < d; ++i) out << ",x" << i;
    for (int i = 0; i < d; ++i) out << ",v" << i;
    out << "\n";
    for (const auto& p : s.particles) {
        out << p.id << "," << p.tag;
        for (int i = 0; i < d; ++i) out << "," << fmt(p.x[i]);
        for (int i = 0; i < d; ++i) out << "," << fmt(p.v[i]);
        out << "\n";
    }
}

}  // namespace kc
