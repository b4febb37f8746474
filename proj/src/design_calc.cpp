#include "doorsim/design_calc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <span>

namespace doorsim::design {

namespace {

constexpr std::array<int, 12> kE12 = {10, 12, 15, 18, 22, 27, 33, 39, 47, 56, 68, 82};
constexpr std::array<int, 24> kE24 = {10, 11, 12, 13, 15, 16, 18, 20, 22, 24, 27, 30,
                                      33, 36, 39, 43, 47, 51, 56, 62, 68, 75, 82, 91};

void require(bool ok, const std::string& message) {
    if (!ok) throw DesignError(message);
}

void require_finite(double v, const char* name) {
    require(std::isfinite(v), std::string(name) + " must be finite");
}

// m * 10^exponent, dividing for negative exponents so that e.g. 33e-4 is the
// correctly rounded double.
double scaled(int mantissa, int exponent) {
    if (exponent >= 0) return mantissa * std::pow(10.0, exponent);
    return mantissa / std::pow(10.0, -exponent);
}

}  // namespace

const char* unit_symbol(Unit u) {
    switch (u) {
        case Unit::Volt: return "V";
        case Unit::Ampere: return "A";
        case Unit::Ohm: return "Ω";
        case Unit::Farad: return "F";
        case Unit::Second: return "s";
    }
    return "";
}

DesignQuantity rectified_peak(double v_reg, double headroom, int n_diodes, double v_diode) {
    require_finite(v_reg, "v_reg");
    require_finite(headroom, "headroom");
    require_finite(v_diode, "v_diode");
    require(v_reg >= 0 && headroom >= 0 && n_diodes >= 0 && v_diode >= 0,
            "rectified_peak: inputs must be non-negative");
    return {v_reg + headroom + n_diodes * v_diode, Unit::Volt};
}

DesignQuantity transformer_rms(double v_peak) {
    require_finite(v_peak, "v_peak");
    require(v_peak >= 0, "transformer_rms: v_peak must be non-negative");
    return {v_peak / std::sqrt(2.0), Unit::Volt};
}

DesignQuantity ripple_amplitude(double v_peak, double ripple_fraction) {
    require_finite(v_peak, "v_peak");
    require(ripple_fraction >= 0 && ripple_fraction <= 1, "ripple_amplitude: fraction must be within [0, 1]");
    return {v_peak * ripple_fraction, Unit::Volt};
}

DesignQuantity smoothing_capacitor(double i_load, double line_freq, double dv) {
    require(i_load > 0, "smoothing_capacitor: load current must be positive");
    require(line_freq > 0, "smoothing_capacitor: line frequency must be positive");
    require(dv > 0, "smoothing_capacitor: ripple voltage must be positive");
    const double dt = 1.0 / (2.0 * line_freq);
    return {i_load * dt / dv, Unit::Farad};
}

DesignQuantity led_series_resistor(double v_supply, double v_forward, double i_forward) {
    require(v_supply > v_forward, "led_series_resistor: supply must exceed the LED forward voltage");
    require(i_forward > 0, "led_series_resistor: forward current must be positive");
    return {(v_supply - v_forward) / i_forward, Unit::Ohm};
}

DesignQuantity divider_output(double r_top, double r_bottom, double v_supply) {
    require(r_top >= 0 && r_bottom >= 0, "divider_output: resistances must be non-negative");
    require(r_top + r_bottom > 0, "divider_output: total resistance must be positive");
    return {v_supply * r_bottom / (r_top + r_bottom), Unit::Volt};
}

DesignQuantity reference_divider_resistor(double v_ref, double v_supply, double r_fixed) {
    require(v_ref > 0 && v_ref < v_supply, "reference_divider_resistor: need 0 < v_ref < v_supply");
    require(r_fixed > 0, "reference_divider_resistor: fixed resistor must be positive");
    return {v_ref * r_fixed / (v_supply - v_ref), Unit::Ohm};
}

DesignQuantity monostable_period(double r, double c) {
    require(r > 0 && c > 0, "monostable_period: R and C must be positive");
    return {1.1 * r * c, Unit::Second};
}

DesignQuantity monostable_resistor(double t, double c) {
    require(t > 0 && c > 0, "monostable_resistor: T and C must be positive");
    return {t / (1.1 * c), Unit::Ohm};
}

DesignQuantity switch_base_resistor(double v_supply, double r_coil, double h_fe, double v_in, double v_be) {
    require(v_supply > 0 && r_coil > 0 && h_fe > 0 && v_be > 0, "switch_base_resistor: inputs must be positive");
    require(v_in > v_be, "switch_base_resistor: input voltage must exceed V_BE");
    // I_C = V+/R_C at saturation, I_B = I_C/h_FE, R_B = (V_in - V_BE)/I_B.
    return {(v_in - v_be) * h_fe * r_coil / v_supply, Unit::Ohm};
}

DesignQuantity nearest_preferred(DesignQuantity value, Series series) {
    require(std::isfinite(value.value) && value.value > 0, "nearest_preferred: value must be positive");
    const std::span<const int> mantissas =
        series == Series::E12 ? std::span<const int>(kE12) : std::span<const int>(kE24);

    // Mantissas are two-digit, so decade d holds m * 10^(d-1).
    const int decade = static_cast<int>(std::floor(std::log10(value.value)));
    double best = 0;
    double best_distance = INFINITY;
    for (int d = decade - 1; d <= decade + 1; ++d) {
        for (int m : mantissas) {
            const double candidate = scaled(m, d - 1);
            const double distance = std::fabs(candidate - value.value);
            if (distance < best_distance || (distance == best_distance && candidate > best)) {
                best = candidate;
                best_distance = distance;
            }
        }
    }
    return {best, value.unit};
}

std::string format_sig4(double value) {
    if (value == 0 || !std::isfinite(value)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", value);
        return buf;
    }
    int exponent = static_cast<int>(std::floor(std::log10(std::fabs(value))));
    double step = std::pow(10.0, exponent - 3);
    double rounded = std::round(value / step) * step;
    // Rounding can carry into the next decade (9999.7 -> 10000).
    if (std::fabs(rounded) >= std::pow(10.0, exponent + 1)) ++exponent;
    const int decimals = std::max(0, 3 - exponent);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
    return buf;
}

std::string format_quantity(const DesignQuantity& q) {
    return format_sig4(q.value) + " " + unit_symbol(q.unit);
}

std::string format_si(const DesignQuantity& q) {
    struct Prefix {
        double scale;
        const char* symbol;
    };
    static constexpr std::array<Prefix, 9> kPrefixes = {{
        {1e-12, "p"}, {1e-9, "n"}, {1e-6, "µ"}, {1e-3, "m"}, {1.0, ""},
        {1e3, "k"}, {1e6, "M"}, {1e9, "G"}, {1e12, "T"},
    }};
    const double magnitude = std::fabs(q.value);
    const Prefix* chosen = &kPrefixes[4];
    if (magnitude > 0) {
        for (const auto& p : kPrefixes) {
            // Tolerate representation error at prefix boundaries.
            if (magnitude >= p.scale * (1 - 1e-9)) chosen = &p;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g %s%s", q.value / chosen->scale, chosen->symbol, unit_symbol(q.unit));
    return buf;
}

}  // namespace doorsim::design
