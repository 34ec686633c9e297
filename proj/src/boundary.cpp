#include "chemolab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace chemolab {

BoundarySignal constant_signal(double value) {
    BoundarySignal s;
    s.kind = BoundarySignal::Kind::Analytic;
    s.value = [value](double) { return value; };
    s.derivative = [](double) { return 0.0; };
    return s;
}

BoundarySignal one_plus_exponential_decay(double c, double lambda) {
    BoundarySignal s;
    s.kind = BoundarySignal::Kind::Analytic;
    s.value = [c, lambda](double t) { return 1.0 + c * std::exp(-lambda * t); };
    s.derivative = [c, lambda](double t) { return -c * lambda * std::exp(-lambda * t); };
    return s;
}

BoundarySignal exponential_decay(double c, double lambda) {
    BoundarySignal s;
    s.kind = BoundarySignal::Kind::Analytic;
    s.value = [c, lambda](double t) { return c * std::exp(-lambda * t); };
    s.derivative = [c, lambda](double t) { return -c * lambda * std::exp(-lambda * t); };
    return s;
}

BoundarySignal damped_oscillation(double c, double lambda, double omega, double offset) {
    BoundarySignal s;
    s.kind = BoundarySignal::Kind::Analytic;
    s.value = [=](double t) { return offset + c * std::exp(-lambda * t) * std::cos(omega * t); };
    s.derivative = [=](double t) {
        return c * std::exp(-lambda * t) * (-lambda * std::cos(omega * t) - omega * std::sin(omega * t));
    };
    return s;
}

BoundarySignal one_plus_algebraic_decay(double c, double lambda) {
    BoundarySignal s;
    s.kind = BoundarySignal::Kind::Analytic;
    s.value = [c, lambda](double t) { return 1.0 + c / (1.0 + lambda * t); };
    s.derivative = [c, lambda](double t) {
        const double d = 1.0 + lambda * t;
        return -c * lambda / (d * d);
    };
    return s;
}

BoundarySignal tabulated_signal(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw InvalidParams("tabulated_signal: needs at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].first > samples[i - 1].first))
            throw InvalidParams("tabulated_signal: sample times must be strictly increasing");

    auto table = std::make_shared<std::vector<std::pair<double, double>>>(std::move(samples));

    // Index of the interval containing t; clamped to the table range.
    auto interval = [table](double t) -> std::size_t {
        const auto& tb = *table;
        if (t <= tb.front().first) return 0;
        if (t >= tb[tb.size() - 2].first) return tb.size() - 2;
        auto it = std::upper_bound(tb.begin(), tb.end(), t,
                                   [](double x, const auto& p) { return x < p.first; });
        return static_cast<std::size_t>(it - tb.begin()) - 1;
    };

    BoundarySignal s;
    s.kind = BoundarySignal::Kind::Tabulated;
    s.value = [table, interval](double t) {
        const auto& tb = *table;
        if (t <= tb.front().first) return tb.front().second;
        if (t >= tb.back().first) return tb.back().second;
        const std::size_t i = interval(t);
        const double w = (t - tb[i].first) / (tb[i + 1].first - tb[i].first);
        return tb[i].second + w * (tb[i + 1].second - tb[i].second);
    };
    s.derivative = [table, interval](double t) {
        const auto& tb = *table;
        if (t < tb.front().first || t > tb.back().first) return 0.0;
        const std::size_t i = interval(t);
        return (tb[i + 1].second - tb[i].second) / (tb[i + 1].first - tb[i].first);
    };
    return s;
}

AlphaBounds sample_alpha_bounds(const BoundaryData& bd, double horizon, double dt) {
    if (!(horizon > 0.0) || !(dt > 0.0))
        throw InvalidParams("sample_alpha_bounds: horizon and dt must be positive");
    AlphaBounds out;
    out.sample_dt = dt;
    out.horizon = horizon;
    out.lower = std::min(bd.alpha1(0.0), bd.alpha2(0.0));
    out.upper = std::max(bd.alpha1(0.0), bd.alpha2(0.0));
    const long long steps = static_cast<long long>(horizon / dt) + 1;
    for (long long k = 1; k <= steps; ++k) {
        const double t = std::min(horizon, dt * static_cast<double>(k));
        const double a1 = bd.alpha1(t);
        const double a2 = bd.alpha2(t);
        out.lower = std::min(out.lower, std::min(a1, a2));
        out.upper = std::max(out.upper, std::max(a1, a2));
    }
    return out;
}

namespace {

BaSignalReport integrate_abs(const std::string& name, const std::function<double(double)>& f,
                             double horizon, double dt, double tail_fraction) {
    BaSignalReport rep;
    rep.name = name;
    const long long steps = std::max<long long>(1, static_cast<long long>(horizon / dt + 0.5));
    const double step = horizon / static_cast<double>(steps);
    const double tail_start = horizon * (1.0 - tail_fraction);
    double total = 0.0, tail = 0.0;
    double prev = std::abs(f(0.0));
    for (long long k = 1; k <= steps; ++k) {
        const double t = step * static_cast<double>(k);
        const double cur = std::abs(f(t));
        const double inc = 0.5 * step * (prev + cur);
        total += inc;
        if (t > tail_start) tail += inc;
        prev = cur;
    }
    rep.total = total;
    rep.tail = tail;
    return rep;
}

}  // namespace

BaReport ba_integrability_check(const BoundaryData& bd, double horizon, double dt) {
    if (!(horizon > 0.0)) throw InvalidParams("ba_integrability_check: horizon must be positive");
    if (!(dt > 0.0)) throw InvalidParams("ba_integrability_check: dt must be positive");

    BaReport rep;
    rep.horizon = horizon;

    auto add = [&](const std::string& name, std::function<double(double)> f) {
        rep.signals.push_back(integrate_abs(name, f, horizon, dt, rep.tail_window_fraction));
    };
    add("alpha1-1", [&bd](double t) { return bd.alpha1(t) - 1.0; });
    add("alpha2-1", [&bd](double t) { return bd.alpha2(t) - 1.0; });
    add("alpha1'", [&bd](double t) { return bd.alpha1.derivative(t); });
    add("alpha2'", [&bd](double t) { return bd.alpha2.derivative(t); });
    if (bd.has_beta()) {
        add("beta1", [&bd](double t) { return bd.beta1->value(t); });
        add("beta2", [&bd](double t) { return bd.beta2->value(t); });
        add("beta1'", [&bd](double t) { return bd.beta1->derivative(t); });
        add("beta2'", [&bd](double t) { return bd.beta2->derivative(t); });
    }

    const AlphaBounds ab = sample_alpha_bounds(bd, horizon, dt);
    rep.alpha1_min = ab.lower;  // refined below per trace
    rep.alpha2_min = ab.lower;
    {
        double m1 = bd.alpha1(0.0), m2 = bd.alpha2(0.0);
        const long long steps = static_cast<long long>(horizon / dt) + 1;
        for (long long k = 1; k <= steps; ++k) {
            const double t = std::min(horizon, dt * static_cast<double>(k));
            m1 = std::min(m1, bd.alpha1(t));
            m2 = std::min(m2, bd.alpha2(t));
        }
        rep.alpha1_min = m1;
        rep.alpha2_min = m2;
    }

    rep.satisfied = true;
    for (const auto& s : rep.signals) {
        if (s.total <= 1e-14) continue;  // identically zero signal is trivially integrable
        if (s.tail >= rep.tail_fraction_threshold * s.total) rep.satisfied = false;
    }
    return rep;
}

}  // namespace chemolab
