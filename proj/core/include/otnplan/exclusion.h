#pragma once

#include <map>
#include <vector>

#include "otnplan/configuration.h"

namespace otnplan {

struct ExclusionSets {
  /// Routers each protection LSP must avoid.
  std::map<int, Exclusion> lsp;
  /// Fiber nodes and links a lightpath must avoid while it carries the
  /// given protection LSP. The exclusion of a pbeta lightpath is the union
  /// over the pLSPs it carries.
  std::map<int, Exclusion> carried;
};

/// Working LSPs that receive a protection LSP: all of them in single-layer
/// mode, the multi-hop ones in multilayer modes, none otherwise.
std::vector<int> protected_lsps(const NetworkConfiguration& working, SurvivabilityMode mode);

/// Requires working routes and the fiber routes of the working lightpaths.
/// Throws std::invalid_argument if a working route references a missing
/// lightpath.
ExclusionSets compute_exclusion_sets(const NetworkConfiguration& working, SurvivabilityMode mode);

/// Union of the carried exclusions of the pLSPs riding `key`.
Exclusion pbeta_exclusion(const ExclusionSets& sets, const NetworkConfiguration& config,
                          const LightpathKey& key);

/// Constraints on the optical protection lightpath of `lp`: its transit
/// nodes, plus for interlayer BRS the fibers of protection-carrying
/// lightpaths that would be claimed by the same failure. Without
/// `interface_contention` the fibers claimed by an interface failure of a
/// lightpath carrying both single-hop and multi-hop LSPs are left out.
Exclusion protection_lightpath_exclusion(const NetworkConfiguration& config, const Lightpath& lp,
                                         bool interface_contention = true);

/// Working LSPs riding `key` when it carries both single-hop and multi-hop
/// LSPs; empty otherwise.
std::vector<int> mixed_riders(const NetworkConfiguration& config, const LightpathKey& key);

}  // namespace otnplan
