#include "otnplan/traffic.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace otnplan {

Bandwidth Bandwidth::from_gbps(double gbps) {
  return Bandwidth(static_cast<std::int64_t>(std::llround(gbps * 10.0)));
}

std::string Bandwidth::to_string() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", gbps());
  return buf;
}

std::vector<LspDemand> split_demands(const std::vector<Demand>& demands, Bandwidth capacity) {
  if (capacity.tenths() <= 0) throw std::invalid_argument("split_demands: capacity must be > 0");
  std::vector<LspDemand> out;
  for (const Demand& d : demands) {
    if (d.bandwidth.tenths() <= 0) {
      throw std::invalid_argument("split_demands: demand bandwidth must be > 0");
    }
    if (d.source == d.destination) {
      throw std::invalid_argument("split_demands: demand source equals destination");
    }
    const std::int64_t b = d.bandwidth.tenths();
    const std::int64_t parts = (b + capacity.tenths() - 1) / capacity.tenths();
    const std::int64_t base = b / parts;
    const std::int64_t remainder = b % parts;
    for (std::int64_t k = 0; k < parts; ++k) {
      LspDemand lsp;
      lsp.id = static_cast<int>(out.size());
      lsp.source = d.source;
      lsp.destination = d.destination;
      lsp.bandwidth = Bandwidth::from_tenths(base + (k < remainder ? 1 : 0));
      out.push_back(lsp);
    }
  }
  return out;
}

}  // namespace otnplan
