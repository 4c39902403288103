#include "otnplan/costs.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace otnplan {

CostRatios CostRatios::from_label(const std::string& label) {
  std::string key = label;
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "cr1") return cr1();
  if (key == "cr2") return cr2();
  if (key == "cr3") return cr3();
  throw std::invalid_argument("unknown cost ratio '" + label + "' (expected CR1, CR2 or CR3)");
}

UnitCosts derive_unit_costs(const CostRatios& ratios, Bandwidth capacity) {
  if (capacity.tenths() <= 0) throw std::invalid_argument("capacity must be > 0");
  UnitCosts u;
  u.lightpath = 2.0 * (ratios.ip_port + ratios.oxc_port);
  u.wavelength = 2.0 * (ratios.oxc_port + ratios.transponder);
  u.transit_per_gbps = ratios.ip_port / capacity.gbps();
  return u;
}

}  // namespace otnplan
