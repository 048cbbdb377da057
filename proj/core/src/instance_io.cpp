#include "allgood/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "allgood/error.hpp"
#include "json.hpp"

namespace allgood {

using nlohmann::json;

BanditInstance parse_instance(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::invalid_instance, std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(Errc::invalid_instance, "instance must be a JSON object");
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "means" && key != "epsilon" && key != "mode" && key != "variance") {
      throw Error(Errc::invalid_instance, "unknown instance field '" + key + "'");
    }
  }
  if (!doc.contains("means") || !doc["means"].is_array()) {
    throw Error(Errc::invalid_instance, "instance needs a 'means' array");
  }
  if (!doc.contains("epsilon") || !doc["epsilon"].is_number()) {
    throw Error(Errc::invalid_instance, "instance needs a numeric 'epsilon'");
  }
  std::vector<double> means;
  for (const auto& v : doc["means"]) {
    if (!v.is_number()) throw Error(Errc::invalid_instance, "'means' must hold numbers");
    means.push_back(v.get<double>());
  }
  Mode mode = Mode::Additive;
  if (doc.contains("mode")) {
    const auto& m = doc["mode"];
    if (m == "additive") {
      mode = Mode::Additive;
    } else if (m == "multiplicative") {
      mode = Mode::Multiplicative;
    } else {
      throw Error(Errc::invalid_instance, "'mode' must be \"additive\" or \"multiplicative\"");
    }
  }
  double variance = 1.0;
  if (doc.contains("variance")) {
    if (!doc["variance"].is_number()) {
      throw Error(Errc::invalid_instance, "'variance' must be a number");
    }
    variance = doc["variance"].get<double>();
  }
  return BanditInstance(std::move(means), doc["epsilon"].get<double>(), mode, variance);
}

BanditInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open instance file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(Errc::io, "cannot read instance file " + path.string());
  return parse_instance(buffer.str());
}

std::string instance_to_json(const BanditInstance& instance) {
  json doc;
  doc["means"] = std::vector<double>(instance.means().begin(), instance.means().end());
  doc["epsilon"] = instance.epsilon();
  doc["mode"] = to_string(instance.mode());
  doc["variance"] = instance.variance();
  return doc.dump();
}

}  // namespace allgood
