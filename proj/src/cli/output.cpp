#include "cli/output.hpp"

#include <cstdio>

#include "cli/config.hpp"

namespace qes::cli {

json encode(const Scalar& x) {
    json out;
    if (x.is_exact()) out["exact"] = x.to_string();
    out["decimal"] = x.decimal(kDecimalDigits);
    return out;
}

json encode_approx(const Scalar& x) {
    json out;
    out["decimal"] = x.decimal(kDecimalDigits);
    out["approximate"] = true;
    return out;
}

json encode(long double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Le", kDecimalDigits - 1, x);
    return json{{"decimal", buf}};
}

json encode_root(const IsolatedRoot& r) {
    if (r.exact || !r.value.is_exact()) return encode(r.value);
    json out = encode_approx(r.value);
    out["interval"] = {r.lower.to_string(), r.upper.to_string()};
    return out;
}

json encode(const PolyE& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(encode(c));
    return out;
}

json encode(const std::vector<Scalar>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(encode(x));
    return out;
}

json encode(const ReducedModel& m) {
    json out;
    out["kind"] = to_string(m.provenance.kind);
    out["a"] = encode(m.a);
    out["gamma"] = encode(m.gamma);
    out["alpha"] = encode(m.alpha);
    out["beta"] = encode(m.beta);
    out["J"] = encode(m.J);
    out["is_qes"] = m.is_qes;
    out["s"] = encode(m.s());
    out["potential"] = {{"B", encode(m.B)}, {"C", encode(m.C)}, {"H", encode(m.H)}, {"F", encode(m.F)}};
    json prov = json::object();
    for (const auto& [key, value] : m.provenance.values) prov[key] = encode(value);
    out["provenance"] = prov;
    return out;
}

json encode(const CoulombModel& m) {
    json out;
    out["kind"] = "coulomb";
    out["a"] = encode(m.a());
    out["gamma"] = encode(m.gamma());
    out["B"] = encode(m.B());
    out["C_squared"] = encode(m.C_squared());
    out["C_sign"] = m.C_sign();
    out["F"] = encode(m.F());
    return out;
}

json encode(const ResidualReport& r) {
    json out;
    out["points"] = r.points;
    out["rho0"] = encode(r.rho0);
    out["rho_max"] = encode(r.rho_max);
    out["residual"] = encode(r.extrapolated);
    out["raw_residual"] = {{"coarse", encode(r.raw_coarse)}, {"base", encode(r.raw)}, {"fine", encode(r.raw_fine)}};
    out["slope"] = encode(r.slope);
    return out;
}

json error_document(const std::string& kind, const std::string& message, int exit_code) {
    json out;
    out["schema_version"] = kSchemaVersion;
    out["error"] = {{"kind", kind}, {"message", message}, {"exit_code", exit_code}};
    return out;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace qes::cli
