#include "bjc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>
#include <utility>

#include "bjc/analytic.hpp"
#include "bjc/errors.hpp"
#include "bjc/model.hpp"
#include "bjc/version.hpp"

namespace bjc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void set_param(ModelParams& p, SweepParam which, double value) {
    switch (which) {
        case SweepParam::delta: p.delta = value; break;
        case SweepParam::g: p.g = value; break;
        case SweepParam::chi: p.chi = value; break;
        case SweepParam::omega: p.omega = value; break;
        case SweepParam::kappa: p.kappa = value; break;
        case SweepParam::gamma: p.gamma = value; break;
        case SweepParam::j: p.j = value; break;
    }
}

// Column names contributed by one observable, in emission order.
std::vector<std::string> columns_of(Observable o) {
    if (o == Observable::poisson_dev) return {"poisson_dev_m1", "poisson_dev_m2"};
    return {to_string(o)};
}

bool is_numeric_observable(Observable o) { return o != Observable::g2_analytic; }

}  // namespace

const char* to_string(SweepParam p) {
    switch (p) {
        case SweepParam::delta: return "delta";
        case SweepParam::g: return "g";
        case SweepParam::chi: return "chi";
        case SweepParam::omega: return "omega";
        case SweepParam::kappa: return "kappa";
        case SweepParam::gamma: return "gamma";
        case SweepParam::j: return "j";
    }
    return "?";
}

SweepParam sweep_param_from_string(const std::string& name) {
    for (SweepParam p : {SweepParam::delta, SweepParam::g, SweepParam::chi, SweepParam::omega,
                         SweepParam::kappa, SweepParam::gamma, SweepParam::j}) {
        if (name == to_string(p)) return p;
    }
    throw ConfigError("unknown sweep parameter '" + name +
                      "' (expected one of delta, g, chi, omega, kappa, gamma, j)");
}

const char* to_string(SweepMethod m) {
    switch (m) {
        case SweepMethod::numeric: return "numeric";
        case SweepMethod::analytic: return "analytic";
        case SweepMethod::both: return "both";
    }
    return "?";
}

SweepMethod sweep_method_from_string(const std::string& name) {
    for (SweepMethod m : {SweepMethod::numeric, SweepMethod::analytic, SweepMethod::both})
        if (name == to_string(m)) return m;
    throw ConfigError("unknown method '" + name + "' (expected numeric, analytic or both)");
}

const char* to_string(Observable o) {
    switch (o) {
        case Observable::g2_cw: return "g2_cw";
        case Observable::g2_analytic: return "g2_analytic";
        case Observable::mean_n_cw: return "mean_n_cw";
        case Observable::p1: return "p1";
        case Observable::p2: return "p2";
        case Observable::poisson_dev: return "poisson_dev";
    }
    return "?";
}

Observable observable_from_string(const std::string& name) {
    for (Observable o : {Observable::g2_cw, Observable::g2_analytic, Observable::mean_n_cw,
                         Observable::p1, Observable::p2, Observable::poisson_dev}) {
        if (name == to_string(o)) return o;
    }
    throw ConfigError("unknown observable '" + name +
                      "' (expected one of g2_cw, g2_analytic, mean_n_cw, p1, p2, poisson_dev)");
}

std::vector<double> Axis::values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    const double h = step();
    for (int i = 0; i < count; ++i) {
        // Pin the endpoints exactly; interior points are start + i*h.
        v[static_cast<std::size_t>(i)] = (i == count - 1) ? stop : start + h * static_cast<double>(i);
    }
    return v;
}

std::vector<Observable> SweepSpec::effective_observables() const {
    if (!observables.empty()) return observables;
    switch (method) {
        case SweepMethod::numeric:
            return {Observable::g2_cw, Observable::mean_n_cw, Observable::p1, Observable::p2};
        case SweepMethod::analytic:
            return {Observable::g2_analytic};
        case SweepMethod::both:
            return {Observable::g2_cw, Observable::g2_analytic, Observable::mean_n_cw,
                    Observable::p1, Observable::p2};
    }
    return {};
}

void SweepSpec::validate() const {
    base.validate();

    auto check_axis = [](const Axis& a, const char* name) {
        if (a.count < 2) throw SweepError(std::string(name) + ": count must be at least 2");
        if (!std::isfinite(a.start) || !std::isfinite(a.stop))
            throw SweepError(std::string(name) + ": bounds must be finite");
        if (!(a.start < a.stop))
            throw SweepError(std::string(name) + ": start must be strictly below stop");
    };
    check_axis(axis1, "axis1");
    if (axis2) {
        check_axis(*axis2, "axis2");
        if (axis2->param == axis1.param)
            throw SweepError("axis2 must sweep a different parameter than axis1");
    }
    if (jobs < 1) throw SweepError("jobs must be at least 1");

    const auto obs = effective_observables();
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t k = i + 1; k < obs.size(); ++k)
            if (obs[i] == obs[k])
                throw SweepError(std::string("duplicate observable '") + to_string(obs[i]) + "'");

    const bool wants_analytic =
        std::any_of(obs.begin(), obs.end(), [](Observable o) { return !is_numeric_observable(o); });
    const bool wants_numeric =
        std::any_of(obs.begin(), obs.end(), [](Observable o) { return is_numeric_observable(o); });
    if (wants_analytic && method == SweepMethod::numeric)
        throw SweepError("observable g2_analytic requires method analytic or both");
    if (wants_numeric && method == SweepMethod::analytic)
        throw SweepError("numeric observables require method numeric or both");

    if (wants_analytic) {
        // The amplitude solution must hold at every grid point, so parameters
        // it constrains cannot be swept away from the valid regime.
        auto on_axis = [&](SweepParam p) {
            return axis1.param == p || (axis2 && axis2->param == p);
        };
        if (on_axis(SweepParam::gamma) || on_axis(SweepParam::kappa))
            throw SweepError("the analytic method requires gamma == kappa at every grid point; "
                             "sweeping gamma or kappa is not supported");
        if (on_axis(SweepParam::j))
            throw SweepError("the analytic method requires j == 0; sweeping j is not supported");
        if (base.gamma != base.kappa)
            throw SweepError("the analytic method requires gamma == kappa");
        if (base.j != 0.0) throw SweepError("the analytic method requires j == 0");
        // g must stay positive across the grid.
        auto g_ok = [&]() {
            if (axis1.param == SweepParam::g) return axis1.start > 0.0;
            if (axis2 && axis2->param == SweepParam::g) return axis2->start > 0.0;
            return base.g > 0.0;
        };
        if (!g_ok())
            throw SweepError("the analytic method requires g > 0 at every grid point");
    }
}

namespace {

struct PointResult {
    SweepRow row;
    double residual = kNaN;  // steady-state residual when a numeric solve ran
};

PointResult evaluate_point(const SweepSpec& spec, const std::vector<Observable>& obs,
                           std::size_t n_columns, double x1, std::optional<double> x2) {
    PointResult out;
    out.row.x1 = x1;
    out.row.x2 = x2;
    out.row.values.assign(n_columns, kNaN);

    ModelParams p = spec.base;
    set_param(p, spec.axis1.param, x1);
    if (x2) set_param(p, spec.axis2->param, *x2);

    try {
        p.validate();

        const bool need_numeric =
            std::any_of(obs.begin(), obs.end(), [](Observable o) { return is_numeric_observable(o); });
        const bool need_analytic =
            std::any_of(obs.begin(), obs.end(), [](Observable o) { return !is_numeric_observable(o); });

        double g2 = kNaN, mean = kNaN, prob1 = kNaN, prob2 = kNaN;
        double dev1 = kNaN, dev2 = kNaN, g2_ana = kNaN;

        auto wants = [&](Observable o) { return std::find(obs.begin(), obs.end(), o) != obs.end(); };
        if (need_numeric) {
            const Superoperator l = liouvillian(p);
            const DensityMatrix rho = steady_state(l, spec.solve);
            out.residual = l.apply(rho.mat).cwiseAbs().maxCoeff();

            const auto dist = photon_distribution(rho, Mode::cw);
            mean = mean_photon(rho, Mode::cw);
            prob1 = dist.size() > 1 ? dist[1] : 0.0;
            prob2 = dist.size() > 2 ? dist[2] : 0.0;
            if (wants(Observable::g2_cw)) g2 = g2_zero(rho, Mode::cw);
            if (wants(Observable::poisson_dev)) {
                const auto ratios = poisson_deviation(dist, mean);
                dev1 = ratios.size() > 1 ? ratios[1] - 1.0 : kNaN;
                dev2 = ratios.size() > 2 ? ratios[2] - 1.0 : kNaN;
            }
        }
        if (need_analytic) {
            const AmplitudeSet amp = steady_amplitudes(p);
            g2_ana = analytic_g2(amp).approximate;
        }

        std::size_t c = 0;
        for (Observable o : obs) {
            switch (o) {
                case Observable::g2_cw: out.row.values[c++] = g2; break;
                case Observable::g2_analytic: out.row.values[c++] = g2_ana; break;
                case Observable::mean_n_cw: out.row.values[c++] = mean; break;
                case Observable::p1: out.row.values[c++] = prob1; break;
                case Observable::p2: out.row.values[c++] = prob2; break;
                case Observable::poisson_dev:
                    out.row.values[c++] = dev1;
                    out.row.values[c++] = dev2;
                    break;
            }
        }
    } catch (const std::exception& e) {
        out.row.values.assign(n_columns, kNaN);
        out.row.failed = true;
        out.row.error = e.what();
        out.residual = kNaN;
    }
    return out;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec) {
    spec.validate();

    SweepTable table;
    table.spec = spec;
    table.version = kVersion;

    const auto obs = spec.effective_observables();
    for (Observable o : obs)
        for (auto& name : columns_of(o)) table.columns.push_back(name);

    const auto v1 = spec.axis1.values();
    const std::vector<double> v2 = spec.axis2 ? spec.axis2->values() : std::vector<double>{};
    const std::size_t n1 = v1.size();
    const std::size_t n2 = spec.axis2 ? v2.size() : 1;
    const std::size_t n = n1 * n2;

    std::vector<PointResult> results(n);

    // Each grid point is independent; a shared atomic cursor hands indices to
    // the workers.  Results land in their own slots, so the table is
    // identical no matter how many workers ran or how the points interleaved.
    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= n) return;
            const std::size_t i1 = i / n2;
            const std::size_t i2 = i % n2;
            std::optional<double> x2;
            if (spec.axis2) x2 = v2[i2];
            results[i] = evaluate_point(spec, obs, table.columns.size(), v1[i1], x2);
        }
    };

    const int jobs = std::min<int>(spec.jobs, static_cast<int>(n));
    if (jobs <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    // Sequential reduction in row order keeps the statistics deterministic.
    table.rows.reserve(n);
    double residual_sum = 0.0;
    std::size_t residual_count = 0;
    for (auto& r : results) {
        if (r.row.failed) ++table.failures;
        if (std::isfinite(r.residual)) {
            table.max_residual = std::max(table.max_residual, r.residual);
            residual_sum += r.residual;
            ++residual_count;
        }
        table.rows.push_back(std::move(r.row));
    }
    if (residual_count > 0) table.mean_residual = residual_sum / static_cast<double>(residual_count);

    if (2 * static_cast<std::size_t>(table.failures) > n)
        throw SweepError("sweep failed at " + std::to_string(table.failures) + " of " +
                         std::to_string(n) + " grid points");
    return table;
}

namespace {

std::size_t column_index(const SweepTable& table, const std::string& column) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        if (table.columns[i] == column) return i;
    throw SweepError("unknown column '" + column + "'");
}

}  // namespace

std::vector<Minimum> find_minima(const SweepTable& table, const std::string& column) {
    if (table.spec.axis2) throw SweepError("find_minima requires a one-dimensional sweep");
    const std::size_t ci = column_index(table, column);
    const std::size_t n = table.rows.size();

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = table.rows[i].values[ci];

    std::vector<Minimum> minima;
    std::size_t i = 1;
    while (n >= 3 && i + 1 < n) {
        // Strict descent into i is required; NaN comparisons are false, so
        // failed rows can never open or close a minimum.
        if (!(v[i] < v[i - 1])) {
            ++i;
            continue;
        }
        std::size_t last = i;  // rightmost point of a flat valley floor
        while (last + 1 < n && v[last + 1] == v[i]) ++last;
        if (last + 1 < n && v[last + 1] > v[i]) {
            minima.push_back({table.rows[i].x1, v[i], i});  // leftmost of the plateau
        }
        i = last + 1;
    }
    return minima;
}

namespace {

struct Segment {
    ContourPoint a;
    ContourPoint b;
};

// Exact-comparison key for chaining: crossing points on a shared cell edge
// are computed once per edge in a canonical orientation, so both adjacent
// cells see bit-identical coordinates.
using PointKey = std::pair<double, double>;
PointKey key_of(const ContourPoint& p) { return {p.x, p.y}; }

}  // namespace

std::vector<Polyline> extract_contour(const SweepTable& table, const std::string& column,
                                      double level, ContourScale scale) {
    if (!table.spec.axis2) throw SweepError("extract_contour requires a two-dimensional sweep");
    const std::size_t ci = column_index(table, column);
    if (scale == ContourScale::log10 && !(level > 0.0))
        throw SweepError("a log-scale contour requires a level > 0");

    const auto xs = table.spec.axis1.values();
    const auto ys = table.spec.axis2->values();
    const std::size_t n1 = xs.size();
    const std::size_t n2 = ys.size();

    // Grid of (possibly transformed) field values; NaN marks unusable corners.
    auto transform = [&](double v) {
        if (scale == ContourScale::log10) return v > 0.0 ? std::log10(v) : kNaN;
        return v;
    };
    std::vector<double> f(n1 * n2);
    for (std::size_t i1 = 0; i1 < n1; ++i1)
        for (std::size_t i2 = 0; i2 < n2; ++i2)
            f[i1 * n2 + i2] = transform(table.rows[i1 * n2 + i2].values[ci]);
    const double fl = scale == ContourScale::log10 ? std::log10(level) : level;

    // Crossing point on the edge between two grid nodes, interpolated in the
    // transformed field.  Callers pass nodes in canonical order (left→right
    // or bottom→top) regardless of which cell is asking.
    auto crossing = [&](std::size_t i1a, std::size_t i2a, std::size_t i1b,
                        std::size_t i2b) -> ContourPoint {
        const double fa = f[i1a * n2 + i2a];
        const double fb = f[i1b * n2 + i2b];
        const double t = (fl - fa) / (fb - fa);
        return {xs[i1a] + t * (xs[i1b] - xs[i1a]), ys[i2a] + t * (ys[i2b] - ys[i2a])};
    };

    std::vector<Segment> segments;
    for (std::size_t i1 = 0; i1 + 1 < n1; ++i1) {
        for (std::size_t i2 = 0; i2 + 1 < n2; ++i2) {
            const double f00 = f[i1 * n2 + i2];
            const double f10 = f[(i1 + 1) * n2 + i2];
            const double f11 = f[(i1 + 1) * n2 + i2 + 1];
            const double f01 = f[i1 * n2 + i2 + 1];
            if (!std::isfinite(f00) || !std::isfinite(f10) || !std::isfinite(f11) ||
                !std::isfinite(f01))
                continue;

            const int c = (f00 > fl ? 1 : 0) | (f10 > fl ? 2 : 0) | (f11 > fl ? 4 : 0) |
                          (f01 > fl ? 8 : 0);
            if (c == 0 || c == 15) continue;

            // Edge midpoints in canonical orientation.
            auto bottom = [&] { return crossing(i1, i2, i1 + 1, i2); };
            auto top = [&] { return crossing(i1, i2 + 1, i1 + 1, i2 + 1); };
            auto left = [&] { return crossing(i1, i2, i1, i2 + 1); };
            auto right = [&] { return crossing(i1 + 1, i2, i1 + 1, i2 + 1); };

            switch (c) {
                case 1: case 14: segments.push_back({left(), bottom()}); break;
                case 2: case 13: segments.push_back({bottom(), right()}); break;
                case 3: case 12: segments.push_back({left(), right()}); break;
                case 4: case 11: segments.push_back({right(), top()}); break;
                case 6: case 9: segments.push_back({bottom(), top()}); break;
                case 7: case 8: segments.push_back({top(), left()}); break;
                case 5: case 10: {
                    // Saddle: disambiguate with the cell-center average.
                    const double center = 0.25 * (f00 + f10 + f11 + f01);
                    const bool center_high = center > fl;
                    if ((c == 5) == center_high) {
                        segments.push_back({left(), top()});
                        segments.push_back({right(), bottom()});
                    } else {
                        segments.push_back({left(), bottom()});
                        segments.push_back({right(), top()});
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // Chain segments into polylines by exact endpoint matching.
    std::map<PointKey, std::vector<std::size_t>> at_point;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        at_point[key_of(segments[s].a)].push_back(s);
        at_point[key_of(segments[s].b)].push_back(s);
    }

    std::vector<bool> used(segments.size(), false);
    auto take_next = [&](const ContourPoint& p) -> std::optional<std::size_t> {
        auto it = at_point.find(key_of(p));
        if (it == at_point.end()) return std::nullopt;
        for (std::size_t s : it->second)
            if (!used[s]) return s;
        return std::nullopt;
    };

    std::vector<Polyline> lines;
    for (std::size_t seed = 0; seed < segments.size(); ++seed) {
        if (used[seed]) continue;
        used[seed] = true;
        Polyline line{segments[seed].a, segments[seed].b};

        // Grow forward from the back, then backward from the front.
        for (;;) {
            auto s = take_next(line.back());
            if (!s) break;
            used[*s] = true;
            const auto back_key = key_of(line.back());
            line.push_back(key_of(segments[*s].a) == back_key ? segments[*s].b : segments[*s].a);
        }
        for (;;) {
            auto s = take_next(line.front());
            if (!s) break;
            used[*s] = true;
            const auto front_key = key_of(line.front());
            line.insert(line.begin(),
                        key_of(segments[*s].a) == front_key ? segments[*s].b : segments[*s].a);
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace bjc
