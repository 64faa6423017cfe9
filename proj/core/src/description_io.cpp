#include "maxface/description_io.hpp"

#include <json.hpp>

#include "maxface/errors.hpp"

namespace maxface {

namespace {

using Json = nlohmann::ordered_json;

Complex parse_pair(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw UsageError(where + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Polynomial parse_poly(const Json& j, const std::string& where) {
    if (!j.is_array()) throw UsageError(where + ": expected an array of [re, im] pairs");
    std::vector<Complex> cs;
    for (size_t k = 0; k < j.size(); ++k)
        cs.push_back(parse_pair(j[k], where + "[" + std::to_string(k) + "]"));
    return Polynomial{std::move(cs)};
}

RationalMap parse_rational(const Json& j, const std::string& where, const Tolerances& tol) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw UsageError(where + ": expected an object with \"num\" and \"den\"");
    return RationalMap{parse_poly(j["num"], where + ".num"), parse_poly(j["den"], where + ".den"),
                       tol};
}

Json poly_json(const Polynomial& p) {
    Json arr = Json::array();
    for (const Complex& c : p.coeffs()) arr.push_back(Json::array({c.real(), c.imag()}));
    if (arr.empty()) arr.push_back(Json::array({0.0, 0.0}));
    return arr;
}

}  // namespace

WeierstrassData parse_surface_description(const std::string& json_text, const Tolerances& tol) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("surface description: invalid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) throw UsageError("surface description: top level must be an object");
    for (const char* key : {"g", "omega_hat", "punctures", "base_point"})
        if (!j.contains(key))
            throw UsageError(std::string("surface description: missing field \"") + key + "\"");

    const std::string label = j.value("label", std::string{});
    const RationalMap g = parse_rational(j["g"], "g", tol);
    const RationalMap omega_hat = parse_rational(j["omega_hat"], "omega_hat", tol);

    if (!j["punctures"].is_array()) throw UsageError("punctures: expected an array");
    std::vector<SpherePoint> punctures;
    for (size_t k = 0; k < j["punctures"].size(); ++k) {
        const Json& e = j["punctures"][k];
        const std::string where = "punctures[" + std::to_string(k) + "]";
        if (e.is_string()) {
            if (e.get<std::string>() != "inf")
                throw UsageError(where + ": the only string form is \"inf\"");
            punctures.push_back(SpherePoint::infinity());
        } else {
            punctures.push_back(SpherePoint{parse_pair(e, where)});
        }
    }
    const Complex base = parse_pair(j["base_point"], "base_point");
    return make_weierstrass_data(g, omega_hat, punctures, base, label,
                                 SurfaceConvention::Maxface, tol);
}

std::string serialize_surface_description(const WeierstrassData& data) {
    Json j;
    j["label"] = data.label;
    j["g"] = Json{{"num", poly_json(data.g.num())}, {"den", poly_json(data.g.den())}};
    j["omega_hat"] =
        Json{{"num", poly_json(data.omega_hat.num())}, {"den", poly_json(data.omega_hat.den())}};
    Json punct = Json::array();
    for (const auto& p : data.punctures) {
        if (p.is_infinite())
            punct.push_back("inf");
        else
            punct.push_back(Json::array({p.value.real(), p.value.imag()}));
    }
    j["punctures"] = punct;
    j["base_point"] = Json::array({data.base_point.real(), data.base_point.imag()});
    return j.dump(2) + "\n";
}

}  // namespace maxface
