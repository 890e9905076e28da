#pragma once

#include <string>

#include "incgeo/body.hpp"
#include "incgeo/projective.hpp"
#include "incgeo/witness.hpp"

namespace incgeo {

// Canonical text forms. Bodies accept five input types:
//   {"type":"vpolytope","vertices":[[...],...]}
//   {"type":"ellipsoid","center":[...],"shape":[[...],...]}
//   {"type":"ball","center":[...],"radius":r}
//   {"type":"reuleaux","width":w}                      (2D, 360 arc samples)
//   {"type":"ellipsoid_params","R":..,"r":..,"delta":..} (optional "n", default 2)
// and serialize back as vpolytope or ellipsoid. Maps carry the homogeneous
// (n+1)x(n+1) matrix plus the domain side:
//   {"matrix":[[...],...],"domain_sign":"+"|"-"}
// Certificates carry {"flmap","functional","value_A","value_B","eps"}.
// Malformed input fails with InvalidParams; round-trips agree within 1e-12.

Body parse_body(const std::string& text);
std::string dump_body(const Body& K);
Body load_body(const std::string& path);
void save_body(const Body& K, const std::string& path);

FLMap parse_flmap(const std::string& text);
std::string dump_flmap(const FLMap& F);

WitnessCertificate parse_certificate(const std::string& text);
std::string dump_certificate(const WitnessCertificate& cert);

}  // namespace incgeo
