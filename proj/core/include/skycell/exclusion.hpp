#pragma once

#include <array>
#include <optional>

#include "skycell/region_set.hpp"
#include "skycell/scenario.hpp"

namespace skycell {

/// Candidate serving BS: ground distance, link class and lobe, plus its
/// fading-free received level P_tx * g(r_s) * zeta_v(r_s).
struct ServingContext {
  double r_s = 0.0;
  LinkType link = LinkType::los;
  Lobe lobe = Lobe::sidelobe;
  double serving_signal = 0.0;
};

/// Builds the context for a BS at r_s; the lobe follows from the antenna
/// geometry. Throws std::domain_error when the BS delivers no signal
/// (outside the drone cone).
ServingContext make_serving(double r_s, LinkType link, const Scenario& sc);

/// Ground distances where an LoS / NLoS competitor would be at least as
/// strong as the serving BS.
struct StrongerSets {
  RegionSet no_los;
  RegionSet no_nlos;
  LinkType serving_type = LinkType::los;
  double r_s = 0.0;

  const RegionSet& for_type(LinkType xi) const { return xi == LinkType::los ? no_los : no_nlos; }
};

/// Clamped closed-form boundaries z_1..z_12 (index 0..11) for a drone above
/// the BSs. Sidelobe-side bounds are clipped to [0, min(r_0, r_max)],
/// mainlobe-side bounds to [r_0, r_max]; std::nullopt marks a bound whose
/// interval is empty.
using ZValues = std::array<std::optional<double>, 12>;
ZValues z_values(double r_s, const Scenario& sc);

/// Closed-form sets for a drone above the BSs. Throws std::domain_error for
/// any other geometry.
StrongerSets stronger_sets(const ServingContext& serving, const Scenario& sc);

/// Interval solver valid for every geometry: inside each constant-gain region
/// the competitor level is strictly decreasing in r, so the stronger set is
/// that region cut at the closed-form inversion of the path-loss law.
StrongerSets stronger_sets_general(const ServingContext& serving, const Scenario& sc);

/// Closed forms for drones, the general solver otherwise.
StrongerSets exclusion_sets(const ServingContext& serving, const Scenario& sc);

}  // namespace skycell
