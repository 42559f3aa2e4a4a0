#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace echolab {

/// Uniformly sampled real time series. samples[k] is the value at
/// t0 + k / sample_rate.
struct Trace {
    std::vector<double> samples;
    double sample_rate = 0.0;
    double t0 = 0.0;
    std::string label;

    std::size_t size() const noexcept { return samples.size(); }
    double time_at(std::size_t i) const { return t0 + static_cast<double>(i) / sample_rate; }
    double duration() const {
        return samples.empty() ? 0.0 : static_cast<double>(samples.size() - 1) / sample_rate;
    }

    /// Sub-trace from t_start (inclusive) to t_stop (exclusive; infinity = end).
    Trace slice(double t_start, double t_stop = std::numeric_limits<double>::infinity()) const {
        Trace out;
        out.sample_rate = sample_rate;
        out.label = label;
        if (samples.empty()) return out;
        auto first = static_cast<std::ptrdiff_t>(std::ceil((t_start - t0) * sample_rate - 1e-9));
        if (first < 0) first = 0;
        auto last = static_cast<std::ptrdiff_t>(std::floor((t_stop - t0) * sample_rate));
        if (last > static_cast<std::ptrdiff_t>(samples.size())) last = samples.size();
        if (first >= last) {
            out.t0 = t_start;
            return out;
        }
        out.t0 = time_at(static_cast<std::size_t>(first));
        out.samples.assign(samples.begin() + first, samples.begin() + last);
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (double s : samples) m = std::max(m, std::abs(s));
        return m;
    }

    double energy() const {
        double e = 0.0;
        for (double s : samples) e += s * s;
        return e;
    }
};

using ProbeSet = std::map<std::string, Trace>;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CSV export, header "t,<probe>,...", SI units, full double precision.
/// `header_comments` lines are emitted first, each prefixed with "# ".
inline void write_traces_csv(std::ostream& os, const std::vector<const Trace*>& traces,
                             const std::vector<std::string>& header_comments = {}) {
    for (const auto& line : header_comments) os << "# " << line << "\n";
    if (traces.empty()) return;
    os << "t";
    for (const Trace* tr : traces) os << "," << tr->label;
    os << "\n";
    std::size_t n = 0;
    for (const Trace* tr : traces) n = std::max(n, tr->size());
    for (std::size_t i = 0; i < n; ++i) {
        os << format_double(traces[0]->time_at(i));
        for (const Trace* tr : traces) os << "," << (i < tr->size() ? format_double(tr->samples[i]) : std::string());
        os << "\n";
    }
}

}  // namespace echolab
