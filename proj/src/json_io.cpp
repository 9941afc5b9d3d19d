#include "cvp/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cvp {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void append_matrix(std::string& s, const Mat3& m) {
  s += "[";
  for (int i = 0; i < 9; ++i) {
    if (i) s += ", ";
    s += format_double(m.m[size_t(i)]);
  }
  s += "]";
}

void append_word(std::string& s, const Word& w) {
  s += "[";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(w[i]);
  }
  s += "]";
}

Mat3 matrix_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 9) fail(errc::config_error, "matrix must be 9 reals");
  Mat3 m;
  for (int i = 0; i < 9; ++i) m.m[size_t(i)] = j[size_t(i)].get<double>();
  return m;
}

Word word_from(const nlohmann::json& j) {
  Word w;
  for (const auto& e : j) w.push_back(e.get<int>());
  return w;
}

}  // namespace

std::string representation_to_json(const Representation& rep) {
  std::string s = "{\n  \"gens\": [";
  for (size_t i = 0; i < rep.gens.size(); ++i) {
    if (i) s += ", ";
    s += "\"" + rep.gens[i] + "\"";
  }
  s += "],\n  \"images\": [";
  for (size_t i = 0; i < rep.images.size(); ++i) {
    if (i) s += ", ";
    s += "\n    ";
    append_matrix(s, rep.images[i]);
  }
  s += "\n  ],\n  \"relators\": [";
  for (size_t i = 0; i < rep.relators.size(); ++i) {
    if (i) s += ", ";
    append_word(s, rep.relators[i]);
  }
  s += "]";
  if (rep.splitting) {
    const Splitting& sp = *rep.splitting;
    s += ",\n  \"splitting\": {\"kind\": \"";
    s += sp.kind == Splitting::Kind::amalgam ? "amalgam" : "hnn";
    s += "\", \"gamma\": ";
    append_word(s, sp.gamma);
    s += ", \"left_gens\": [";
    for (size_t i = 0; i < sp.left_gens.size(); ++i) {
      if (i) s += ", ";
      s += std::to_string(sp.left_gens[i]);
    }
    s += "]";
    if (sp.kind == Splitting::Kind::amalgam) {
      s += ", \"right_gens\": [";
      for (size_t i = 0; i < sp.right_gens.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(sp.right_gens[i]);
      }
      s += "]";
    } else {
      s += ", \"stable_letter\": " + std::to_string(sp.stable_letter);
    }
    s += "}";
  }
  s += "\n}\n";
  return s;
}

Representation representation_from_json(const std::string& text) try {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::config_error, "invalid representation JSON");
  if (!j.is_object() || !j.contains("gens") || !j.contains("images"))
    fail(errc::config_error, "representation JSON needs gens and images");
  std::vector<std::string> gens;
  for (const auto& g : j["gens"]) gens.push_back(g.get<std::string>());
  std::vector<Mat3> images;
  for (const auto& m : j["images"]) images.push_back(matrix_from(m));
  std::vector<Word> relators;
  if (j.contains("relators"))
    for (const auto& r : j["relators"]) relators.push_back(word_from(r));
  std::optional<Splitting> splitting;
  if (j.contains("splitting")) {
    const auto& js = j["splitting"];
    Splitting sp;
    std::string kind = js.at("kind").get<std::string>();
    if (kind == "amalgam")
      sp.kind = Splitting::Kind::amalgam;
    else if (kind == "hnn")
      sp.kind = Splitting::Kind::hnn;
    else
      fail(errc::config_error, "splitting kind must be amalgam or hnn");
    sp.gamma = word_from(js.at("gamma"));
    for (const auto& e : js.at("left_gens")) sp.left_gens.push_back(e.get<int>());
    if (sp.kind == Splitting::Kind::amalgam)
      for (const auto& e : js.at("right_gens")) sp.right_gens.push_back(e.get<int>());
    else
      sp.stable_letter = js.at("stable_letter").get<int>();
    splitting = sp;
  }
  return make_representation(std::move(gens), std::move(images), std::move(relators),
                             std::move(splitting));
} catch (const nlohmann::json::exception& e) {
  fail(errc::config_error, std::string("representation JSON: ") + e.what());
}

std::string domain_to_json(const ConvexDomain& dom) {
  std::string s = "{\n  \"chart\": ";
  append_matrix(s, dom.chart);
  s += ",\n  \"vertices\": [";
  for (size_t i = 0; i < dom.vertices.size(); ++i) {
    if (i) s += ", ";
    s += "[" + format_double(dom.vertices[i].x) + ", " + format_double(dom.vertices[i].y) + "]";
  }
  s += "]\n}\n";
  return s;
}

ConvexDomain domain_from_json(const std::string& text) try {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) fail(errc::config_error, "invalid domain JSON");
  Mat3 chart = j.contains("chart") ? matrix_from(j["chart"]) : Mat3::identity();
  std::vector<Vec2> vs;
  for (const auto& v : j.at("vertices")) vs.push_back({v[0].get<double>(), v[1].get<double>()});
  return make_domain(std::move(vs), chart);
} catch (const nlohmann::json::exception& e) {
  fail(errc::config_error, std::string("domain JSON: ") + e.what());
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(errc::config_error, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::io_failure, "cannot open " + path + " for writing");
  f << content;
  if (!f) fail(errc::io_failure, "failed writing " + path);
}

std::string content_hash(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace cvp
