#pragma once

#include <iosfwd>
#include <string>

#include "bour/cusps.hpp"
#include "bour/deform.hpp"
#include "bour/error.hpp"
#include "bour/invariants.hpp"
#include "bour/natural.hpp"
#include "bour/profile.hpp"
#include "bour/surface.hpp"
#include "json.hpp"

namespace bour {

using json = nlohmann::ordered_json;

const char* library_version();

// %.17g.
std::string format_double(double v);

json to_json(const EdgeParams& p);
// Missing fields keep the defaults of EdgeParams; "U" is required.
EdgeParams edge_params_from_json(const json& j);
json to_json(const ValidationReport& r);
json to_json(const InvariantReport& r);
json to_json(const CuspType& c);
json to_json(const NaturalChart& c);
json to_json(const RoundtripReport& r);

void write_obj(std::ostream& out, const Mesh& mesh, const EdgeParams& datum);
// Columns s,t,E,F,G at every mesh vertex.
void write_fundamental_form_csv(std::ostream& out, const EdgeData& data, const Mesh& mesh);
// Columns h,m,valid,kappa_nu,kappa_t,edge_type.
void write_family_csv(std::ostream& out, const DeformationFamily& fam);
std::string member_obj_name(double h, double m);

}  // namespace bour
