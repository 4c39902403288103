#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otnplan/topology.h"

namespace otnplan {

/// Bandwidth in exact tenths of a Gbps.
class Bandwidth {
 public:
  constexpr Bandwidth() = default;
  static constexpr Bandwidth from_tenths(std::int64_t tenths) { return Bandwidth(tenths); }
  /// Rounds to the nearest 0.1 Gbps.
  static Bandwidth from_gbps(double gbps);

  constexpr std::int64_t tenths() const { return tenths_; }
  constexpr double gbps() const { return static_cast<double>(tenths_) / 10.0; }

  constexpr Bandwidth& operator+=(Bandwidth o) { tenths_ += o.tenths_; return *this; }
  constexpr Bandwidth& operator-=(Bandwidth o) { tenths_ -= o.tenths_; return *this; }
  friend constexpr Bandwidth operator+(Bandwidth a, Bandwidth b) { return a += b; }
  friend constexpr Bandwidth operator-(Bandwidth a, Bandwidth b) { return a -= b; }
  friend constexpr auto operator<=>(Bandwidth, Bandwidth) = default;

  std::string to_string() const;

 private:
  constexpr explicit Bandwidth(std::int64_t t) : tenths_(t) {}
  std::int64_t tenths_ = 0;
};

/// A bidirectional symmetric traffic demand before splitting.
struct Demand {
  NodeId source = 0;
  NodeId destination = 0;
  Bandwidth bandwidth;
};

/// An indivisible flow routed on a single LSP.
struct LspDemand {
  int id = 0;
  NodeId source = 0;
  NodeId destination = 0;
  Bandwidth bandwidth;
};

/// Splits every demand into ceil(b / C) LSPs whose bandwidths differ by at
/// most one 0.1 Gbps unit and sum to b. Exactly divisible demands split into
/// equal parts. LSP ids are assigned consecutively in input order.
std::vector<LspDemand> split_demands(const std::vector<Demand>& demands, Bandwidth capacity);

}  // namespace otnplan
