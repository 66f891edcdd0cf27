#include "qes/record.hpp"

#include <json.hpp>

namespace qes::cli {

using Json = nlohmann::ordered_json;

namespace {

Json doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double d : v) a.push_back(d);
  return a;
}

Json to_json(const SolutionRecord& r) {
  const auto& p = r.point;
  const auto& s = p.residuals;
  const auto& scan = r.provenance.scan;
  Json j;
  j["schema_version"] = r.schema_version;
  j["context"] = {{"m", r.context.m}, {"zalpha", r.context.zalpha}, {"l", r.context.l}, {"n", r.context.n}};
  j["point"] = {{"x0", p.x0},
                {"t", p.t},
                {"E", p.E},
                {"lB", p.lB},
                {"eB", p.eB},
                {"b0", p.b0},
                {"b", p.b},
                {"c", p.c},
                {"x0p", p.x0p},
                {"bp", p.bp},
                {"cp", p.cp},
                {"epsilon", p.epsilon},
                {"epsilonp", p.epsilonp},
                {"Qcoeffs", doubles(p.Qcoeffs)},
                {"Pcoeffs", doubles(p.Pcoeffs)},
                {"branch", spectra::to_string(p.branch)}};
  j["residuals"] = {{"kernel_r0", s.kernel_r0}, {"kernel_r1", s.kernel_r1}, {"sigma_min", s.sigma_min},
                    {"divis_rem", s.divis_rem}, {"ode_Q", s.ode_Q},         {"ode_P", s.ode_P},
                    {"dirac_max", s.dirac_max}};
  j["provenance"] = {{"scan",
                      {{"x0_min", scan.x0_min},
                       {"x0_max", scan.x0_max},
                       {"grid_points", scan.grid_points},
                       {"tol_accept", scan.tol_accept},
                       {"tol_refine", scan.tol_refine},
                       {"exclusion", scan.exclusion}}},
                     {"tool_version", r.provenance.tool_version},
                     {"timestamp", r.provenance.timestamp ? Json(*r.provenance.timestamp) : Json(nullptr)}};
  return j;
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw RecordError(where + " must be an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw RecordError("missing field " + where + "." + key);
  return *it;
}

double number(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_number()) throw RecordError(where + "." + key + " must be a number");
  return v.get<double>();
}

long long integer(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_number_integer()) throw RecordError(where + "." + key + " must be an integer");
  return v.get<long long>();
}

int small_int(const Json& obj, const char* key, const std::string& where) {
  const long long v = integer(obj, key, where);
  if (v < -1000000 || v > 1000000) throw RecordError(where + "." + key + " out of range");
  return static_cast<int>(v);
}

std::vector<double> number_list(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_array()) throw RecordError(where + "." + key + " must be an array");
  std::vector<double> out;
  for (const Json& e : v) {
    if (!e.is_number()) throw RecordError(where + "." + key + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

SolutionRecord from_json(const Json& j, const std::string& where) {
  SolutionRecord r;
  r.schema_version = small_int(j, "schema_version", where);
  if (r.schema_version != kSchemaVersion) {
    throw RecordError(where + ": unsupported schema_version " + std::to_string(r.schema_version));
  }

  const Json& ctx = field(j, "context", where);
  const std::string cw = where + ".context";
  r.context = {number(ctx, "m", cw), number(ctx, "zalpha", cw), small_int(ctx, "l", cw), small_int(ctx, "n", cw)};

  const Json& pt = field(j, "point", where);
  const std::string pw = where + ".point";
  auto& p = r.point;
  p.x0 = number(pt, "x0", pw);
  p.t = number(pt, "t", pw);
  p.E = number(pt, "E", pw);
  p.lB = number(pt, "lB", pw);
  p.eB = number(pt, "eB", pw);
  p.b0 = number(pt, "b0", pw);
  p.b = number(pt, "b", pw);
  p.c = number(pt, "c", pw);
  p.x0p = number(pt, "x0p", pw);
  p.bp = number(pt, "bp", pw);
  p.cp = number(pt, "cp", pw);
  p.epsilon = small_int(pt, "epsilon", pw);
  p.epsilonp = small_int(pt, "epsilonp", pw);
  p.Qcoeffs = number_list(pt, "Qcoeffs", pw);
  p.Pcoeffs = number_list(pt, "Pcoeffs", pw);
  const Json& branch = field(pt, "branch", pw);
  if (!branch.is_string()) throw RecordError(pw + ".branch must be a string");
  try {
    p.branch = spectra::branch_from_string(branch.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw RecordError(pw + ".branch: " + e.what());
  }

  const Json& res = field(j, "residuals", where);
  const std::string rw = where + ".residuals";
  auto& s = p.residuals;
  s.kernel_r0 = number(res, "kernel_r0", rw);
  s.kernel_r1 = number(res, "kernel_r1", rw);
  s.sigma_min = number(res, "sigma_min", rw);
  s.divis_rem = number(res, "divis_rem", rw);
  s.ode_Q = number(res, "ode_Q", rw);
  s.ode_P = number(res, "ode_P", rw);
  s.dirac_max = number(res, "dirac_max", rw);

  const Json& prov = field(j, "provenance", where);
  const std::string vw = where + ".provenance";
  const Json& scan = field(prov, "scan", vw);
  const std::string sw = vw + ".scan";
  const long long grid = integer(scan, "grid_points", sw);
  if (grid < 0) throw RecordError(sw + ".grid_points must be non-negative");
  r.provenance.scan = {number(scan, "x0_min", sw),     number(scan, "x0_max", sw),
                       static_cast<std::size_t>(grid), number(scan, "tol_accept", sw),
                       number(scan, "tol_refine", sw), number(scan, "exclusion", sw)};
  const Json& version = field(prov, "tool_version", vw);
  if (!version.is_string()) throw RecordError(vw + ".tool_version must be a string");
  r.provenance.tool_version = version.get<std::string>();
  const Json& stamp = field(prov, "timestamp", vw);
  if (stamp.is_string()) {
    r.provenance.timestamp = stamp.get<std::string>();
  } else if (!stamp.is_null()) {
    throw RecordError(vw + ".timestamp must be a string or null");
  }
  return r;
}

}  // namespace

ScanProvenance to_provenance(const spectra::ScanConfig& scan) {
  return {scan.x0_min, scan.x0_max, scan.grid_points, scan.tol_accept, scan.tol_refine, scan.exclusion};
}

std::string emit_records(const std::vector<SolutionRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<SolutionRecord> parse_records(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw RecordError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw RecordError("solution file must hold a JSON array of records");
  std::vector<SolutionRecord> out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(from_json(doc[i], "record[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace qes::cli
