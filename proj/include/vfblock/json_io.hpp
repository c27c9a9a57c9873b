#pragma once

#include <json.hpp>

#include <string>

#include "vfblock/certify.hpp"
#include "vfblock/field.hpp"
#include "vfblock/index.hpp"
#include "vfblock/region.hpp"
#include "vfblock/tracking.hpp"

namespace vfb {

using Json = nlohmann::json;

// Readers throw SchemaError naming the offending path (e.g. "fields.X.p[2].c").

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& path);

Json to_json(const Poly2& p);
Poly2 poly_from_json(const Json& j, const std::string& path);

Json to_json(const TrigPoly2& p);
TrigPoly2 trig_from_json(const Json& j, const std::string& path);

Json to_json(const Scalar& s);

/// {"surface": "plane"|"torus", "p": terms, "q": terms, "smoothness": k}
Json to_json(const PlanarField& x);
PlanarField field_from_json(const Json& j, const std::string& path);

Json to_json(const Region& u);
Region region_from_json(const Json& j, const std::string& path);

/// List of boxes [x0, y0, x1, y1].
Json to_json(const ZeroEnclosure& e);

Json to_json(const IndexResult& r);
Json to_json(const TrackingCertificate& c);

}  // namespace vfb
