#include "mirror/config.hpp"

#include "mirror/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mirror {

namespace {

using nlohmann::json;

struct Checker {
  std::vector<std::string> errors;
  void add(const std::string& ptr, const std::string& msg) { errors.push_back(ptr + ": " + msg); }

  bool rational(const json& v, const std::string& ptr, Q* out = nullptr) {
    if (v.is_number_integer()) {
      if (out) *out = Q(v.get<long long>());
      return true;
    }
    if (v.is_string()) {
      try {
        Q q = parse_rational(v.get<std::string>());
        if (out) *out = q;
        return true;
      } catch (const MirrorError&) {
      }
    }
    add(ptr, "must be an exact rational (integer or \"p/q\" string)");
    return false;
  }

  bool int_matrix(const json& v, const std::string& ptr, int width, IntMat* out) {
    if (!v.is_array()) {
      add(ptr, "must be an array of integer vectors");
      return false;
    }
    bool ok = true;
    for (size_t i = 0; i < v.size(); ++i) {
      const std::string p = ptr + "/" + std::to_string(i);
      if (!v[i].is_array() || (width >= 0 && static_cast<int>(v[i].size()) != width)) {
        add(p, width >= 0 ? "must be an integer vector of length " + std::to_string(width) : "must be an array");
        ok = false;
        continue;
      }
      IntVec row;
      for (size_t j = 0; j < v[i].size(); ++j) {
        if (!v[i][j].is_number_integer()) {
          add(p + "/" + std::to_string(j), "must be an integer");
          ok = false;
          continue;
        }
        row.push_back(v[i][j].get<long long>());
      }
      if (out) out->push_back(row);
    }
    return ok;
  }

  bool positive(const json& v, const std::string& ptr, const std::string& what, double* out) {
    if (!v.is_number()) {
      add(ptr, what + " must be a number");
      return false;
    }
    double x = v.get<double>();
    if (!(x > 0)) {
      add(ptr, what + " must be positive");
      return false;
    }
    *out = x;
    return true;
  }
};

InstanceConfig check(const json& doc, Checker& ck) {
  InstanceConfig cfg;
  if (!doc.is_object()) {
    ck.add("", "top level must be an object");
    return cfg;
  }
  static const char* known[] = {"name", "n", "rays", "extra", "charge", "eta", "twist", "t",
                                "z", "tolerances", "degree_bound", "seed", "cycle_a"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) ck.add("/" + key, "unknown key");
  }
  if (doc.contains("name")) {
    if (doc["name"].is_string())
      cfg.name = doc["name"].get<std::string>();
    else
      ck.add("/name", "must be a string");
  }
  bool have_n = false;
  if (!doc.contains("n")) {
    ck.add("/n", "is required");
  } else if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    ck.add("/n", "must be a positive integer");
  } else {
    cfg.n = doc["n"].get<int>();
    have_n = true;
  }
  const int width = have_n ? cfg.n : -1;
  bool have_rays = false;
  if (!doc.contains("rays"))
    ck.add("/rays", "is required");
  else
    have_rays = ck.int_matrix(doc["rays"], "/rays", width, &cfg.rays);
  if (have_rays && have_n && static_cast<int>(cfg.rays.size()) < cfg.n + 1)
    ck.add("/rays", "needs at least n + 1 vectors");
  if (doc.contains("extra")) ck.int_matrix(doc["extra"], "/extra", width, &cfg.extra);
  const int r = static_cast<int>(cfg.rays.size() + cfg.extra.size());
  const int k = r - cfg.n;
  if (doc.contains("charge")) {
    IntMat c;
    if (ck.int_matrix(doc["charge"], "/charge", r, &c)) cfg.charge = c;
  }
  if (doc.contains("eta")) {
    const auto& e = doc["eta"];
    if (!e.is_array()) {
      ck.add("/eta", "must be an array of rationals");
    } else {
      QVec eta;
      bool ok = true;
      for (size_t i = 0; i < e.size(); ++i) {
        Q q;
        ok = ck.rational(e[i], "/eta/" + std::to_string(i), &q) && ok;
        eta.push_back(q);
      }
      if (ok) cfg.eta = eta;
    }
  }
  cfg.twist.assign(r, Q(0));
  if (doc.contains("twist")) {
    const auto& c = doc["twist"];
    if (!c.is_array() || static_cast<int>(c.size()) != r) {
      ck.add("/twist", "must be an array of " + std::to_string(r) + " rationals");
    } else {
      for (int i = 0; i < r; ++i) {
        Q q;
        if (ck.rational(c[i], "/twist/" + std::to_string(i), &q)) cfg.twist[i] = q;
        if (i >= static_cast<int>(cfg.rays.size()) && q != 0)
          ck.add("/twist/" + std::to_string(i), "must vanish on extra vectors");
      }
    }
  }
  if (!doc.contains("t")) {
    ck.add("/t", "is required");
  } else if (!doc["t"].is_array() || (have_n && have_rays && static_cast<int>(doc["t"].size()) != k)) {
    ck.add("/t", "must be an array of " + std::to_string(k) + " complex numbers");
  } else {
    for (size_t a = 0; a < doc["t"].size(); ++a) {
      const auto& v = doc["t"][a];
      const std::string p = "/t/" + std::to_string(a);
      if (v.is_number()) {
        cfg.t.push_back(cd(v.get<double>()));
      } else if (v.is_object() && v.contains("re") && v["re"].is_number() &&
                 (!v.contains("im") || v["im"].is_number())) {
        cfg.t.push_back(cd(v["re"].get<double>(), v.contains("im") ? v["im"].get<double>() : 0.0));
      } else {
        ck.add(p, "must be a number or {\"re\": x, \"im\": y}");
      }
    }
  }
  if (doc.contains("z")) ck.positive(doc["z"], "/z", "z", &cfg.z);
  if (doc.contains("tolerances")) {
    const auto& tol = doc["tolerances"];
    if (!tol.is_object()) {
      ck.add("/tolerances", "must be an object");
    } else {
      for (const auto& [key, value] : tol.items()) {
        const std::string p = "/tolerances/" + key;
        if (key == "quad")
          ck.positive(value, p, "quad", &cfg.quad_tol);
        else if (key == "series")
          ck.positive(value, p, "series", &cfg.series_tol);
        else if (key == "rel")
          ck.positive(value, p, "rel", &cfg.rel_tol);
        else
          ck.add(p, "unknown tolerance");
      }
    }
  }
  if (doc.contains("degree_bound")) {
    Q q;
    if (ck.rational(doc["degree_bound"], "/degree_bound", &q)) {
      if (q <= 0)
        ck.add("/degree_bound", "must be positive");
      else
        cfg.degree_bound = q;
    }
  }
  if (doc.contains("seed")) {
    if (doc["seed"].is_number_unsigned())
      cfg.seed = doc["seed"].get<std::uint64_t>();
    else
      ck.add("/seed", "must be a non-negative integer");
  }
  if (doc.contains("cycle_a")) {
    const auto& a = doc["cycle_a"];
    if (!a.is_array() || a.size() != cfg.rays.size()) {
      ck.add("/cycle_a", "must be an array of " + std::to_string(cfg.rays.size()) + " rationals");
    } else {
      QVec v;
      bool ok = true;
      for (size_t i = 0; i < a.size(); ++i) {
        Q q;
        ok = ck.rational(a[i], "/cycle_a/" + std::to_string(i), &q) && ok;
        v.push_back(q);
      }
      if (ok) cfg.cycle_a = v;
    }
  }
  return cfg;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

GitInput InstanceConfig::git_input() const {
  GitInput in;
  in.b = rays;
  in.b.insert(in.b.end(), extra.begin(), extra.end());
  in.r_prime = static_cast<int>(rays.size());
  in.charge = charge;
  in.eta = eta;
  return in;
}

std::vector<std::string> validate_config_text(const std::string& text) {
  Checker ck;
  check(parse_json(text), ck);
  return ck.errors;
}

InstanceConfig parse_config(const std::string& text) {
  Checker ck;
  InstanceConfig cfg = check(parse_json(text), ck);
  if (!ck.errors.empty()) {
    std::string msg;
    for (const auto& e : ck.errors) msg += (msg.empty() ? "" : "\n") + e;
    fail(ErrorCode::SchemaError, msg);
  }
  try {
    make_git(cfg.git_input());
  } catch (const MirrorError& e) {
    std::string what = e.what();
    fail(e.code(), "/rays: " + what.substr(what.find(": ") + 2));
  }
  return cfg;
}

InstanceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace mirror
