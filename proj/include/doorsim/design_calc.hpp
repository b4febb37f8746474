#pragma once

// Component sizing for the controller: linear supply, IR emitter, receiver
// reference divider, 555 timing and the relay switch base resistor.
// Exact arithmetic throughout (no 1.4-for-root-two shortcuts).

#include <stdexcept>
#include <string>

namespace doorsim::design {

class DesignError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Unit { Volt, Ampere, Ohm, Farad, Second };

const char* unit_symbol(Unit u);

struct DesignQuantity {
    double value = 0;
    Unit unit = Unit::Volt;
};

enum class Series { E12, E24 };

// Power supply.
DesignQuantity rectified_peak(double v_reg, double headroom, int n_diodes, double v_diode);
DesignQuantity transformer_rms(double v_peak);
DesignQuantity ripple_amplitude(double v_peak, double ripple_fraction);
/// Full-wave reservoir capacitor: C = I * (1 / 2f) / dV.
DesignQuantity smoothing_capacitor(double i_load, double line_freq, double dv);

// Sensor stage.
DesignQuantity led_series_resistor(double v_supply, double v_forward, double i_forward);
DesignQuantity divider_output(double r_top, double r_bottom, double v_supply);
/// Resistor that, below `r_fixed` in a divider across `v_supply`, gives `v_ref`.
DesignQuantity reference_divider_resistor(double v_ref, double v_supply, double r_fixed);

// 555 monostable, T = 1.1 R C.
DesignQuantity monostable_period(double r, double c);
DesignQuantity monostable_resistor(double t, double c);

/// Base resistor that just saturates a switch whose collector load is a relay
/// coil: R_B = (V_in - V_BE) * h_FE * R_C / V+.
DesignQuantity switch_base_resistor(double v_supply, double r_coil, double h_fe, double v_in, double v_be);

/// Closest member of the series in any decade; ties go to the larger value.
DesignQuantity nearest_preferred(DesignQuantity value, Series series);

/// Four significant figures in plain notation, e.g. 90909.1 -> "90910".
std::string format_sig4(double value);

/// "90910 Ω"
std::string format_quantity(const DesignQuantity& q);

/// SI-prefixed form for preferred values, e.g. 82000 Ω -> "82 kΩ".
std::string format_si(const DesignQuantity& q);

}  // namespace doorsim::design
