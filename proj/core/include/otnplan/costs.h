#pragma once

#include <string>

#include "otnplan/traffic.h"

namespace otnplan {

/// Relative prices of the network elements that make up a circuit.
struct CostRatios {
  double transponder = 0.0;  // c_TR
  double ip_port = 0.0;      // c_P_IP, IP/optical interface card
  double oxc_port = 0.0;     // c_P_OXC
  std::string label = "custom";

  static CostRatios cr1() { return {1.0, 8.0, 0.5, "CR1"}; }
  static CostRatios cr2() { return {8.0, 0.5, 1.0, "CR2"}; }
  static CostRatios cr3() { return {0.5, 1.0, 8.0, "CR3"}; }
  /// "cr1" / "CR2" / ... ; throws std::invalid_argument otherwise.
  static CostRatios from_label(const std::string& label);
};

struct UnitCosts {
  double lightpath = 0.0;         // c_LP
  double wavelength = 0.0;        // c_lambda, per wavelength-link
  double transit_per_gbps = 0.0;  // c_TT

  UnitCosts scaled(double factor) const {
    return {lightpath * factor, wavelength * factor, transit_per_gbps * factor};
  }
};

/// A lightpath needs two IP/optical interfaces and two OXC ports; a
/// wavelength-link needs two transponders and two OXC ports; transit traffic
/// is charged the interface price per Gbps of interface rate.
UnitCosts derive_unit_costs(const CostRatios& ratios, Bandwidth capacity);

/// System dimensioning limits.
struct SystemParams {
  Bandwidth capacity = Bandwidth::from_tenths(100);  // C
  int wavelengths = 32;                              // W
  int max_parallel = 2;                              // Q
  int max_interfaces = 0;                            // T

  static int default_interfaces(int nodes, int max_parallel) {
    return 2 * max_parallel * (nodes - 1);
  }
};

}  // namespace otnplan
