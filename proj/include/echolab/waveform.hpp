#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>

namespace echolab {

struct Dc {
    double value = 0.0;
};

/// `cycles / frequency` seconds of zero-phase sine starting at `start`,
/// identically zero outside that window.
struct SineBurst {
    double amplitude = 1.0;
    double frequency = 0.0;
    double cycles = 10.0;
    double start = 0.0;
};

/// Linear chirp: instantaneous frequency runs f0 -> f1 over `duration`,
/// phase-continuous, zero afterwards.
struct Chirp {
    double f0 = 0.0;
    double f1 = 0.0;
    double duration = 0.0;
    double amplitude = 1.0;
};

struct Pulse {
    double amplitude = 1.0;
    double start = 0.0;
    double width = 0.0;
};

/// Sample-driven source for closed-loop co-simulation; the transient session
/// supplies one value per step.
struct External {};

using Waveform = std::variant<Dc, SineBurst, Chirp, Pulse, External>;

inline double eval(const Waveform& w, double t) {
    return std::visit(
        [t](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Dc>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, SineBurst>) {
                const double rel = t - v.start;
                if (rel < 0.0 || v.frequency <= 0.0) return 0.0;
                if (rel >= v.cycles / v.frequency) return 0.0;
                return v.amplitude * std::sin(2.0 * std::numbers::pi * v.frequency * rel);
            } else if constexpr (std::is_same_v<T, Chirp>) {
                if (t < 0.0 || t >= v.duration) return 0.0;
                const double k = (v.f1 - v.f0) / v.duration;
                const double phase = 2.0 * std::numbers::pi * (v.f0 * t + 0.5 * k * t * t);
                return v.amplitude * std::sin(phase);
            } else if constexpr (std::is_same_v<T, Pulse>) {
                return (t >= v.start && t < v.start + v.width) ? v.amplitude : 0.0;
            } else {
                return 0.0;  // External: session-driven
            }
        },
        w);
}

/// Time at which the drive stops delivering energy (0 for Dc/External).
inline double drive_end(const Waveform& w) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SineBurst>)
                return v.frequency > 0.0 ? v.start + v.cycles / v.frequency : 0.0;
            else if constexpr (std::is_same_v<T, Chirp>)
                return v.duration;
            else if constexpr (std::is_same_v<T, Pulse>)
                return v.start + v.width;
            else
                return 0.0;
        },
        w);
}

/// Representative carrier period used for echo gating (one cycle past the
/// end of the drive). Zero for non-oscillatory drives.
inline double carrier_period(const Waveform& w) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SineBurst>)
                return v.frequency > 0.0 ? 1.0 / v.frequency : 0.0;
            else if constexpr (std::is_same_v<T, Chirp>) {
                const double f = 0.5 * (v.f0 + v.f1);
                return f > 0.0 ? 1.0 / f : 0.0;
            } else
                return 0.0;
        },
        w);
}

inline bool is_external(const Waveform& w) { return std::holds_alternative<External>(w); }

}  // namespace echolab
