#include "hyperturan/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hyperturan {

namespace {

void dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t t = 0; t < j.size(); ++t) {
        if (t) out += ',';
        dump(j[t], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s = buf;
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out += s;
      break;
    }
    default:
      out += j.dump();
  }
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw std::invalid_argument(std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, out);
  return out;
}

Json to_json(const Hypergraph& h) {
  return Json{{"r", h.r()}, {"n", h.n()}, {"edges", h.edges()}};
}

Json to_json(const PartialHypergraph& f) {
  return Json{{"r", f.r()}, {"n", f.n()}, {"maximal_edges", f.maximal_edges()}};
}

Json to_json(const FeasiblePoint& x) {
  return Json{{"r", x.r()}, {"k", x.k()}, {"x", x.x()}};
}

Hypergraph hypergraph_from_json(const Json& j) {
  return Hypergraph(field<int>(j, "r"), field<int>(j, "n"),
                    field<std::vector<Edge>>(j, "edges"));
}

PartialHypergraph partial_from_json(const Json& j) {
  return PartialHypergraph(field<int>(j, "r"), field<int>(j, "n"),
                           field<std::vector<Edge>>(j, "maximal_edges"));
}

FeasiblePoint point_from_json(const Json& j, double tol) {
  return FeasiblePoint(field<int>(j, "r"), field<int>(j, "k"),
                       field<std::vector<double>>(j, "x"), tol);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

Json rationals_to_json(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& q : xs) out.push_back(to_string(q));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw std::invalid_argument("rationals are stored as strings");
    out.push_back(rational_from_string(v.get<std::string>()));
  }
  return out;
}

}  // namespace hyperturan
