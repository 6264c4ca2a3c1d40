#pragma once

/**
 * @file optimize.hpp
 * @brief Multi-start local minimization of delta_SSR for a fixed combinatorial type.
 *
 * Corners are substituted by their target coordinates. Nodes on a polygon
 * side are parameterized by one segment parameter in [0, 1]; every other
 * node has two free coordinates. The collinearity terms enter as a
 * quadratic penalty whose weight doubles after every outer round.
 * Minimization is projected gradient descent (Barzilai-Borwein steps with
 * Armijo backtracking) followed by a Nelder-Mead polish. The winning point
 * is lifted to BigFloat, side nodes are projected onto their lines at full
 * precision, and the result is only reported if it passes check_legality.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "equidiss/dissection/collinearity.hpp"
#include "equidiss/dissection/geometry.hpp"
#include "equidiss/dissection/types.hpp"
#include "equidiss/errors.hpp"
#include "equidiss/numerics/bigfloat.hpp"

namespace equidiss {

struct OptimizeConfig {
    int restarts = 64;
    std::uint64_t seed = 0;
    int max_iters = 4000;          ///< gradient iterations per penalty round
    double penalty_start = 1.0;
    double penalty_factor = 2.0;
    int penalty_rounds = 20;
    double grad_tol = 1e-13;
    int polish_iters = 4000;       ///< Nelder-Mead iterations
    long precision = kDefaultPrecision;
    unsigned threads = 0;          ///< 0: hardware concurrency
};

struct OptimizeResult {
    FramedMap<BigFloat> map;
    Metrics<BigFloat> metrics;
    int restart = -1;
    int legal_restarts = 0;
};

namespace detail {

class SsrProblem {
public:
    explicit SsrProblem(const AbstractDissection& d) : d_(d) {
        kind_.assign(d.node_count, Kind::Free);
        slot_.assign(d.node_count, 0);
        side_.assign(d.node_count, 0);
        for (NodeId c : d.corners) kind_[c] = Kind::Corner;
        auto chains = polygon_side_chains(d);
        for (std::size_t i = 0; i < chains.size(); ++i)
            for (NodeId v : chains[i]) {
                kind_[v] = Kind::Side;
                side_[v] = i;
            }
        std::size_t next = 0;
        for (NodeId v = 0; v < d.node_count; ++v) {
            if (kind_[v] == Kind::Corner) continue;
            slot_[v] = next;
            next += kind_[v] == Kind::Side ? 1 : 2;
        }
        dim_ = next;
        corner_pos_.resize(d.node_count);
        for (std::size_t i = 0; i < d.corners.size(); ++i)
            corner_pos_[d.corners[i]] = {d.polygon[i].x.to_double(), d.polygon[i].y.to_double()};
        for (std::size_t i = 0; i < d.polygon.size(); ++i) {
            const auto& a = d.polygon[i];
            const auto& b = d.polygon[(i + 1) % d.polygon.size()];
            side_from_.push_back({a.x.to_double(), a.y.to_double()});
            side_dir_.push_back({(b.x - a.x).to_double(), (b.y - a.y).to_double()});
        }
        mean_ = (d.area / Rational(static_cast<long>(d.n()))).to_double();
        chains_ = chains;
    }

    std::size_t dim() const { return dim_; }

    std::vector<double> random_start(std::mt19937_64& rng) const {
        double lox = std::numeric_limits<double>::infinity(), hix = -lox, loy = lox, hiy = -lox;
        for (const auto& p : d_.polygon) {
            lox = std::min(lox, p.x.to_double());
            hix = std::max(hix, p.x.to_double());
            loy = std::min(loy, p.y.to_double());
            hiy = std::max(hiy, p.y.to_double());
        }
        std::uniform_real_distribution<double> ux(lox, hix), uy(loy, hiy), ut(0.0, 1.0);
        std::vector<double> z(dim_);
        for (NodeId v = 0; v < d_.node_count; ++v) {
            if (kind_[v] == Kind::Free) {
                z[slot_[v]] = ux(rng);
                z[slot_[v] + 1] = uy(rng);
            } else if (kind_[v] == Kind::Side) {
                z[slot_[v]] = ut(rng);
            }
        }
        // Side parameters in boundary order so the start is not folded along the sides.
        for (const auto& chain : chains_) {
            std::vector<double> ts;
            for (NodeId v : chain) ts.push_back(z[slot_[v]]);
            std::sort(ts.begin(), ts.end());
            for (std::size_t k = 0; k < chain.size(); ++k) z[slot_[chain[k]]] = ts[k];
        }
        return z;
    }

    void project(std::vector<double>& z) const {
        for (NodeId v = 0; v < d_.node_count; ++v)
            if (kind_[v] == Kind::Side) z[slot_[v]] = std::clamp(z[slot_[v]], 0.0, 1.0);
    }

    std::vector<Point<double>> decode(const std::vector<double>& z) const {
        std::vector<Point<double>> p(d_.node_count);
        for (NodeId v = 0; v < d_.node_count; ++v) {
            switch (kind_[v]) {
                case Kind::Corner: p[v] = corner_pos_[v]; break;
                case Kind::Free: p[v] = {z[slot_[v]], z[slot_[v] + 1]}; break;
                case Kind::Side: {
                    double t = z[slot_[v]];
                    const auto& a = side_from_[side_[v]];
                    const auto& dv = side_dir_[side_[v]];
                    p[v] = {a.x + t * dv.x, a.y + t * dv.y};
                    break;
                }
            }
        }
        return p;
    }

    /// Penalized objective; fills grad when non-null.
    double value(const std::vector<double>& z, double w, std::vector<double>* grad) const {
        auto p = decode(z);
        std::vector<Point<double>> g(d_.node_count, Point<double>{0.0, 0.0});
        double f = 0;
        auto face = [&](const Triple& t, double coeff_of_area, double target) {
            double a = signed_area(p[t[0]], p[t[1]], p[t[2]]);
            double r = a - target;
            f += coeff_of_area * r * r;
            if (!grad) return;
            double c = 2 * coeff_of_area * r;
            for (int k = 0; k < 3; ++k) {
                const auto& q1 = p[t[(k + 1) % 3]];
                const auto& q2 = p[t[(k + 2) % 3]];
                g[t[k]].x += c * (q1.y - q2.y) / 2;
                g[t[k]].y += c * (q2.x - q1.x) / 2;
            }
        };
        for (const auto& t : d_.triangles) face(t, 1.0, mean_);
        for (const auto& t : d_.collinear) face(t, w, 0.0);
        if (grad) {
            grad->assign(dim_, 0.0);
            for (NodeId v = 0; v < d_.node_count; ++v) {
                if (kind_[v] == Kind::Free) {
                    (*grad)[slot_[v]] = g[v].x;
                    (*grad)[slot_[v] + 1] = g[v].y;
                } else if (kind_[v] == Kind::Side) {
                    const auto& dv = side_dir_[side_[v]];
                    (*grad)[slot_[v]] = g[v].x * dv.x + g[v].y * dv.y;
                }
            }
        }
        return f;
    }

    /// Coordinates at precision P, with side nodes on polygon sides placed exactly on their side.
    FramedMap<BigFloat> lift(const std::vector<double>& z, long P) const {
        FramedMap<BigFloat> phi;
        phi.coords.assign(d_.node_count, Point<BigFloat>{BigFloat(P), BigFloat(P)});
        for (NodeId v = 0; v < d_.node_count; ++v) {
            switch (kind_[v]) {
                case Kind::Corner: {
                    auto it = std::find(d_.corners.begin(), d_.corners.end(), v);
                    const auto& c = d_.polygon[static_cast<std::size_t>(it - d_.corners.begin())];
                    phi[v] = {BigFloat(c.x, P), BigFloat(c.y, P)};
                    break;
                }
                case Kind::Free:
                    phi[v] = {BigFloat(z[slot_[v]], P), BigFloat(z[slot_[v] + 1], P)};
                    break;
                case Kind::Side: {
                    const auto& a = d_.polygon[side_[v]];
                    const auto& b = d_.polygon[(side_[v] + 1) % d_.polygon.size()];
                    BigFloat t(z[slot_[v]], P);
                    phi[v] = {BigFloat(a.x, P) + t * (b.x - a.x), BigFloat(a.y, P) + t * (b.y - a.y)};
                    break;
                }
            }
        }
        return phi;
    }

private:
    enum class Kind { Corner, Side, Free };
    const AbstractDissection& d_;
    std::vector<Kind> kind_;
    std::vector<std::size_t> slot_, side_;
    std::vector<Point<double>> corner_pos_, side_from_, side_dir_;
    std::vector<std::vector<NodeId>> chains_;
    std::size_t dim_ = 0;
    double mean_ = 0;
};

inline double norm2(const std::vector<double>& v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

inline void projected_descent(const SsrProblem& pb, std::vector<double>& z, double w, const OptimizeConfig& cfg) {
    std::vector<double> g, zn, gn;
    double f = pb.value(z, w, &g);
    double step = 1.0 / (1.0 + w);
    for (int it = 0; it < cfg.max_iters; ++it) {
        if (norm2(g) < cfg.grad_tol) break;
        double fn = 0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            zn = z;
            for (std::size_t i = 0; i < z.size(); ++i) zn[i] -= step * g[i];
            pb.project(zn);
            fn = pb.value(zn, w, &gn);
            double decrease = 0;
            for (std::size_t i = 0; i < z.size(); ++i) decrease += g[i] * (z[i] - zn[i]);
            if (fn <= f - 1e-4 * decrease) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        // Barzilai-Borwein step for the next iteration.
        double ss = 0, sy = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            double s = zn[i] - z[i], y = gn[i] - g[i];
            ss += s * s;
            sy += s * y;
        }
        step = sy > 0 ? std::clamp(ss / sy, 1e-12, 1e6) : step * 2;
        bool stalled = std::fabs(f - fn) <= 1e-18 * std::max(1.0, std::fabs(f));
        z.swap(zn);
        g.swap(gn);
        f = fn;
        if (stalled) break;
    }
}

inline void nelder_mead(const SsrProblem& pb, std::vector<double>& z, double w, int iters) {
    const std::size_t D = z.size();
    if (D == 0 || iters <= 0) return;
    auto F = [&](std::vector<double> x) {
        pb.project(x);
        return pb.value(x, w, nullptr);
    };
    std::vector<std::vector<double>> simplex(D + 1, z);
    for (std::size_t i = 0; i < D; ++i) simplex[i + 1][i] += 1e-4;
    std::vector<double> fv(D + 1);
    for (std::size_t i = 0; i <= D; ++i) fv[i] = F(simplex[i]);
    std::vector<std::size_t> order(D + 1);
    for (int it = 0; it < iters; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[D - 1];
        if (std::fabs(fv[worst] - fv[best]) <= 1e-30) break;
        std::vector<double> c(D, 0.0);
        for (std::size_t i = 0; i <= D; ++i)
            if (i != worst)
                for (std::size_t k = 0; k < D; ++k) c[k] += simplex[i][k] / static_cast<double>(D);
        auto along = [&](double t) {
            std::vector<double> x(D);
            for (std::size_t k = 0; k < D; ++k) x[k] = c[k] + t * (simplex[worst][k] - c[k]);
            return x;
        };
        auto xr = along(-1.0);
        double fr = F(xr);
        if (fr < fv[best]) {
            auto xe = along(-2.0);
            double fe = F(xe);
            if (fe < fr) { simplex[worst] = xe; fv[worst] = fe; }
            else { simplex[worst] = xr; fv[worst] = fr; }
        } else if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
        } else {
            auto xc = fr < fv[worst] ? along(-0.5) : along(0.5);
            double fc = F(xc);
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = xc;
                fv[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= D; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < D; ++k)
                        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
                    fv[i] = F(simplex[i]);
                }
            }
        }
    }
    std::size_t best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    if (fv[best] <= pb.value(z, w, nullptr)) {
        z = simplex[best];
        pb.project(z);
    }
}

/// Order of the collinearity triples such that outer nodes are settled first.
inline std::vector<std::size_t> projection_order(const AbstractDissection& d) {
    std::vector<long> middle_of(d.node_count, -1);
    for (std::size_t i = 0; i < d.collinear.size(); ++i) middle_of[d.collinear[i][1]] = static_cast<long>(i);
    std::vector<std::size_t> order;
    std::vector<char> done(d.collinear.size(), 0);
    bool progress = true;
    while (order.size() < d.collinear.size() && progress) {
        progress = false;
        for (std::size_t i = 0; i < d.collinear.size(); ++i) {
            if (done[i]) continue;
            auto settled = [&](NodeId v) { return middle_of[v] < 0 || done[static_cast<std::size_t>(middle_of[v])]; };
            if (settled(d.collinear[i][0]) && settled(d.collinear[i][2])) {
                done[i] = 1;
                order.push_back(i);
                progress = true;
            }
        }
    }
    if (order.size() < d.collinear.size()) throw PreconditionFailed("cyclic collinearity dependencies");
    return order;
}

}  // namespace detail

/// Moves every middle node of L orthogonally onto the line through its outer nodes.
inline void project_collinear(const AbstractDissection& d, FramedMap<BigFloat>& phi) {
    for (std::size_t i : detail::projection_order(d)) {
        const auto& t = d.collinear[i];
        const auto a = phi[t[0]];
        const auto b = phi[t[2]];
        auto& m = phi[t[1]];
        BigFloat dx = b.x - a.x, dy = b.y - a.y;
        BigFloat len2 = dx * dx + dy * dy;
        if (len2.is_zero()) continue;
        BigFloat s = ((m.x - a.x) * dx + (m.y - a.y) * dy) / len2;
        m = {a.x + s * dx, a.y + s * dy};
    }
}

/// Best legal local minimum of delta_SSR over cfg.restarts deterministic starts.
inline OptimizeResult minimize_ssr(const AbstractDissection& d, const OptimizeConfig& cfg) {
    if (cfg.restarts < 1) throw PreconditionFailed("restarts must be at least 1");
    detail::SsrProblem pb(d);

    struct Candidate {
        bool legal = false;
        std::optional<FramedMap<BigFloat>> map;
        BigFloat ssr{kDefaultPrecision};
    };
    std::vector<Candidate> results(static_cast<std::size_t>(cfg.restarts));

    auto run = [&](int r) {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(r));
        auto z = pb.random_start(rng);
        double w = cfg.penalty_start;
        for (int round = 0; round < cfg.penalty_rounds; ++round) {
            detail::projected_descent(pb, z, w, cfg);
            if (round + 1 < cfg.penalty_rounds) w *= cfg.penalty_factor;
        }
        detail::nelder_mead(pb, z, w, cfg.polish_iters);
        detail::projected_descent(pb, z, w, cfg);
        auto phi = pb.lift(z, cfg.precision);
        project_collinear(d, phi);
        Candidate c;
        c.legal = check_legality(d, phi).legal;
        if (c.legal) {
            c.ssr = metrics(d, phi).ssr;
            c.map = std::move(phi);
        }
        results[static_cast<std::size_t>(r)] = std::move(c);
    };

    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.restarts));
    if (workers <= 1) {
        for (int r = 0; r < cfg.restarts; ++r) run(r);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < workers; ++k)
            pool.emplace_back([&, k] {
                for (int r = static_cast<int>(k); r < cfg.restarts; r += static_cast<int>(workers)) run(r);
            });
        for (auto& t : pool) t.join();
    }

    OptimizeResult out{FramedMap<BigFloat>{}, Metrics<BigFloat>{BigFloat(cfg.precision), BigFloat(cfg.precision),
                                                              BigFloat(cfg.precision), std::nullopt}};
    for (int r = 0; r < cfg.restarts; ++r) {
        const auto& c = results[static_cast<std::size_t>(r)];
        if (!c.legal) continue;
        ++out.legal_restarts;
        if (out.restart < 0 || c.ssr < results[static_cast<std::size_t>(out.restart)].ssr) out.restart = r;
    }
    if (out.restart < 0) throw NoLegalPointFound("no restart ended at a legal configuration");
    out.map = *results[static_cast<std::size_t>(out.restart)].map;
    out.metrics = metrics(d, out.map);
    return out;
}

}  // namespace equidiss
