#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace echolab {

/// Base material/geometry constants of a thickness-mode transducer.
struct TransducerBase {
    double rho = 0.0;        // density, kg/m^3
    double v = 0.0;          // wave velocity, m/s
    double eps33 = 0.0;      // clamped dielectric permittivity, F/m
    double e33 = 0.0;        // piezoelectric stress constant, C/m^2
    double k_t = 0.0;        // thickness coupling factor, dimensionless
    double diameter = 0.0;   // m
    double thickness = 0.0;  // m
};

/// Base constants plus the derived electro-acoustic quantities that feed the
/// controlled-source transducer model.
struct TransducerParams {
    // base
    double rho = 0.0, v = 0.0, eps33 = 0.0, e33 = 0.0, k_t = 0.0;
    double diameter = 0.0, thickness = 0.0;
    // derived
    double area = 0.0;        // m^2
    double c0 = 0.0;          // static capacitance, F
    double tau_c = 0.0;       // electrical length (one transit), s
    double turn_ratio = 0.0;  // N = A*e33/T, C/m
    double h = 0.0;           // piezoelectric constant, V/m
    double z0 = 0.0;          // specific acoustic impedance rho*v, kg/(m^2 s)
    double zc = 0.0;          // radiation impedance rho*v*A, kg/s

    /// Open-circuit parallel resonance forced by geometry, v/(2T).
    double f_parallel_nominal() const { return v / (2.0 * thickness); }

    /// Coupling factor actually realized by the circuit quantities
    /// (h, C0, tau_c, Zc). Equals e33^2/(rho v^2 eps33) when every derived
    /// field follows its defining formula; differs when a preset overrides
    /// stated numeric values.
    double effective_coupling() const { return h * std::sqrt(c0 * tau_c / zc); }
};

/// All derived fields computed from the defining formulas; no substitution of
/// any stated numeric column.
inline TransducerParams derive_transducer(const TransducerBase& b) {
    TransducerParams p;
    p.rho = b.rho;
    p.v = b.v;
    p.eps33 = b.eps33;
    p.e33 = b.e33;
    p.k_t = b.k_t;
    p.diameter = b.diameter;
    p.thickness = b.thickness;
    p.area = std::numbers::pi * (b.diameter / 2.0) * (b.diameter / 2.0);
    p.c0 = p.area * b.eps33 / b.thickness;
    p.tau_c = b.thickness / b.v;
    p.turn_ratio = p.area * b.e33 / b.thickness;
    p.h = p.turn_ratio / p.c0;  // = e33/eps33
    p.z0 = b.rho * b.v;
    p.zc = b.rho * b.v * p.area;
    return p;
}

/// Base air-channel constants.
struct AirChannelBase {
    double rho_a = 1.2;   // kg/m^3
    double v_a = 343.0;   // m/s
    double alpha = 0.97;  // attenuation, Np/m
    double gap = 2e-3;    // m
};

/// Per-unit-length line constants of the air path plus the ladder section
/// count used when discretizing.
struct AirChannelParams {
    double rho_a = 0.0, v_a = 0.0, alpha = 0.0, gap = 0.0;
    double area = 0.0;
    double r_per_m = 0.0;  // ohm/m
    double l_per_m = 0.0;  // H/m
    double c_per_m = 0.0;  // F/m
    int segments = 32;
};

inline AirChannelParams derive_air(const AirChannelBase& b, double area) {
    AirChannelParams p;
    p.rho_a = b.rho_a;
    p.v_a = b.v_a;
    p.alpha = b.alpha;
    p.gap = b.gap;
    p.area = area;
    p.r_per_m = 2.0 * b.rho_a * b.v_a * area * b.alpha;
    p.l_per_m = area * b.rho_a;
    p.c_per_m = 1.0 / (area * b.rho_a * b.v_a * b.v_a);
    return p;
}

/// Shunt load across the sensor-node electrical port; 0 means open (no load).
struct LoadConfig {
    double c_load = 0.0;  // F
};

struct ConsistencyRow {
    std::string field;
    double formula_value = 0.0;
    double stated_value = 0.0;
    double relative_gap = 0.0;
    bool flagged = false;  // relative gap above 5%
};

/// Numeric column of the published parameter table. The C0/h pair is known to
/// disagree with the formula column by roughly two orders of magnitude; the
/// report exists to surface that, not hide it.
struct StatedColumn {
    double area = 154e-6;
    double c0 = 58e-9;
    double tau_c = 2e-6;
    double turn_ratio = 0.4483;
    double h = 7.86e6;
    double zc = 4445.0;
};

inline std::vector<ConsistencyRow> consistency_report(const TransducerParams& p,
                                                      const StatedColumn& s = StatedColumn{}) {
    auto row = [](const std::string& name, double formula, double stated) {
        ConsistencyRow r;
        r.field = name;
        r.formula_value = formula;
        r.stated_value = stated;
        r.relative_gap = stated != 0.0 ? std::abs(formula - stated) / std::abs(stated)
                                       : std::abs(formula);
        r.flagged = r.relative_gap > 0.05;
        return r;
    };
    // Recompute the formula column from the base constants regardless of what
    // the params object currently carries.
    TransducerBase base{p.rho, p.v, p.eps33, p.e33, p.k_t, p.diameter, p.thickness};
    TransducerParams d = derive_transducer(base);
    return {
        row("A", d.area, s.area),        row("C_0", d.c0, s.c0),
        row("tau_c", d.tau_c, s.tau_c),  row("N", d.turn_ratio, s.turn_ratio),
        row("h", d.h, s.h),              row("Z_c", d.zc, s.zc),
    };
}

// ---------------------------------------------------------------------------
// Presets

inline TransducerBase table1_base() {
    TransducerBase b;
    b.rho = 7500.0;
    b.v = 3850.0;
    b.eps33 = 30e-9;
    b.e33 = 23.3;
    b.k_t = 0.5;
    b.diameter = 14e-3;
    b.thickness = 8e-3;
    return b;
}

/// Everything recomputed from the base constants (C0 = 0.578 nF, h = 7.77e8).
inline TransducerParams preset_table1_derived() { return derive_transducer(table1_base()); }

/// Numeric column taken verbatim where it is authoritative: A, C0, N, h and
/// Zc come from the table (C0 = 58 nF, h = 7.86e6, mutually consistent via
/// h = N/C0). tau_c keeps the formula value T/v = 2.078 us; the table's
/// "2 us" is a one-digit rounding of the same quantity, and the open-circuit
/// resonance 1/(2 tau_c) must stay at v/(2T).
inline TransducerParams preset_table1_stated() {
    TransducerParams p = preset_table1_derived();
    StatedColumn s;
    p.area = s.area;
    p.c0 = s.c0;
    p.turn_ratio = s.turn_ratio;
    p.h = s.h;
    p.zc = s.zc;
    return p;
}

/// One named channel configuration: a transducer pair (identical), the air
/// path, and the ladder discretization.
struct ChannelPreset {
    std::string name;
    TransducerParams transducer;
    AirChannelBase air;
    int segments = 32;
    double source_resistance = -1.0;  // <0: use 1/(2*pi*f_p*C0)

    AirChannelParams air_params() const {
        AirChannelParams a = derive_air(air, transducer.area);
        a.segments = segments;
        return a;
    }
};

inline ChannelPreset channel_preset_stated() {
    ChannelPreset c;
    c.name = "tableI-stated";
    c.transducer = preset_table1_stated();
    return c;
}

inline ChannelPreset channel_preset_derived() {
    ChannelPreset c;
    c.name = "tableI-derived";
    c.transducer = preset_table1_derived();
    return c;
}

class UnknownPreset : public std::runtime_error {
public:
    explicit UnknownPreset(const std::string& name)
        : std::runtime_error("unknown preset '" + name + "'") {}
};

/// Named presets, either built in or loaded from key=value files.
/// Keys follow the ASCII transliteration documented in docs/presets.md.
class PresetRegistry {
public:
    PresetRegistry() {
        add(channel_preset_stated());
        add(channel_preset_derived());
        alias("tableI", "tableI-stated");
        alias("default", "tableI-stated");
    }

    void add(ChannelPreset preset) { presets_[preset.name] = std::move(preset); }
    void alias(const std::string& from, const std::string& to) { aliases_[from] = to; }

    bool contains(const std::string& name) const {
        return presets_.count(resolve(name)) > 0;
    }

    const ChannelPreset& get(const std::string& name) const {
        auto it = presets_.find(resolve(name));
        if (it == presets_.end()) throw UnknownPreset(name);
        return it->second;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : presets_) out.push_back(k);
        return out;
    }

    /// Parse a key=value preset file. Unknown keys are errors. Derived
    /// transducer quantities are recomputed from the base keys first, then
    /// explicit overrides (C_0=..., h=..., ...) are applied on top.
    void load_file(const std::string& path);

    /// Apply a single key=value override to a preset in place (also used for
    /// macro parameter blocks in netlists). Returns false for unknown keys.
    static bool apply_key(ChannelPreset& p, const std::string& key, double value);

private:
    std::string resolve(const std::string& name) const {
        auto it = aliases_.find(name);
        return it != aliases_.end() ? it->second : name;
    }

    std::map<std::string, ChannelPreset> presets_;
    std::map<std::string, std::string> aliases_;
};

inline bool PresetRegistry::apply_key(ChannelPreset& p, const std::string& key, double value) {
    TransducerParams& t = p.transducer;
    if (key == "rho") t.rho = value;
    else if (key == "v") t.v = value;
    else if (key == "eps33") t.eps33 = value;
    else if (key == "e33") t.e33 = value;
    else if (key == "K_t" || key == "k_t") t.k_t = value;
    else if (key == "D") t.diameter = value;
    else if (key == "T") t.thickness = value;
    else if (key == "A") t.area = value;
    else if (key == "C_0") t.c0 = value;
    else if (key == "tau_c") t.tau_c = value;
    else if (key == "N") t.turn_ratio = value;
    else if (key == "h") t.h = value;
    else if (key == "Z_c") t.zc = value;
    else if (key == "rho_a") p.air.rho_a = value;
    else if (key == "v_a") p.air.v_a = value;
    else if (key == "alpha") p.air.alpha = value;
    else if (key == "d") p.air.gap = value;
    else if (key == "segments") p.segments = static_cast<int>(value);
    else if (key == "R_s") p.source_resistance = value;
    else return false;
    return true;
}

inline void PresetRegistry::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open preset file '" + path + "'");
    ChannelPreset preset;
    // start from derived table-I values so partial files stay meaningful
    preset = channel_preset_derived();
    // name defaults to the file stem
    std::string stem = path;
    if (auto pos = stem.find_last_of("/\\"); pos != std::string::npos) stem = stem.substr(pos + 1);
    if (auto pos = stem.rfind(".preset"); pos != std::string::npos) stem = stem.substr(0, pos);
    preset.name = stem;

    // base keys are collected first so derived quantities can be recomputed
    std::map<std::string, double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string key, eq, rest;
        std::istringstream ls(line);
        if (!(ls >> key)) continue;
        auto eqpos = key.find('=');
        std::string valstr;
        if (eqpos != std::string::npos) {
            valstr = key.substr(eqpos + 1);
            key = key.substr(0, eqpos);
            if (valstr.empty()) ls >> valstr;
        } else {
            ls >> eq;
            if (eq == "=") ls >> valstr;
            else valstr = eq;
        }
        if (key == "name") continue;  // cosmetic
        try {
            values[key] = std::stod(valstr);
        } catch (...) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed value for key '" + key + "'");
        }
    }

    // base constants first, then recompute, then overrides
    static const char* base_keys[] = {"rho", "v", "eps33", "e33", "K_t", "k_t", "D", "T",
                                      "rho_a", "v_a", "alpha", "d", "segments", "R_s"};
    for (const char* k : base_keys) {
        auto it = values.find(k);
        if (it != values.end()) {
            if (!apply_key(preset, k, it->second))
                throw std::runtime_error("unknown preset key '" + std::string(k) + "'");
        }
    }
    TransducerBase b{preset.transducer.rho, preset.transducer.v, preset.transducer.eps33,
                     preset.transducer.e33, preset.transducer.k_t, preset.transducer.diameter,
                     preset.transducer.thickness};
    double rs = preset.source_resistance;
    int seg = preset.segments;
    AirChannelBase air = preset.air;
    preset.transducer = derive_transducer(b);
    preset.air = air;
    preset.segments = seg;
    preset.source_resistance = rs;
    for (const auto& [k, v] : values) {
        bool is_base = false;
        for (const char* bk : base_keys) is_base = is_base || k == bk;
        if (is_base) continue;
        if (!apply_key(preset, k, v))
            throw std::runtime_error("unknown preset key '" + k + "' in " + path);
    }
    add(std::move(preset));
}

}  // namespace echolab
