// JSON encoding of configurations, channels, regions and results.
//
// Rationals are strings "p/q" (or "p"). Channels are either generated,
// {"config": "M1,M2,N1,N2", "profile": "r11,r12,r21,r22", "seed": n}, or
// explicit, {"config": ..., "H": [H11, H12, H21, H22]} with each matrix a
// row-major list of rows of [re, im] pairs.
#pragma once

#include <nlohmann/json.hpp>

#include "xdof/allocation.hpp"
#include "xdof/allocator.hpp"
#include "xdof/bounds.hpp"
#include "xdof/channel.hpp"
#include "xdof/rational.hpp"
#include "xdof/synthesis.hpp"
#include "xdof/tables.hpp"

namespace xdof {

using Json = nlohmann::json;

void to_json(Json& j, const Rational& r);
void from_json(const Json& j, Rational& r);
void to_json(Json& j, const AntennaConfig& c);
void from_json(const Json& j, AntennaConfig& c);
void to_json(Json& j, const RankProfile& p);
void from_json(const Json& j, RankProfile& p);
void to_json(Json& j, const StreamAllocation& a);
void from_json(const Json& j, StreamAllocation& a);
void to_json(Json& j, const DofConstraint& c);
void to_json(Json& j, const DofRegion& r);
void to_json(Json& j, const AllocationResult& r);
void to_json(Json& j, const VerificationReport& r);
void to_json(Json& j, const ClosedFormResult& r);
void to_json(Json& j, const GapReport& r);

// Explicit-entry form.
Json channel_to_json(const ChannelSet& ch);
// Accepts both forms; explicit channels get their profile from numerical
// ranks. Throws InvalidInput on malformed documents.
ChannelSet channel_from_json(const Json& j, const TolerancePolicy& pol = {});

}  // namespace xdof
