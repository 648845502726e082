#pragma once

#include "imc/transition.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace imc::cli {

inline constexpr const char* kModelSchema = "imc-model/1";

/// A parsed model file: states, one row per state, optional initial
/// functional and config overrides.
struct Model {
    Ito ito;
    std::optional<IefHandle> initial;
    nlohmann::ordered_json initial_spec; ///< normalized echo of "initial"
    nlohmann::ordered_json config_overrides = nlohmann::ordered_json::object();
};

/// Throws Error(ParseError) on malformed JSON or schema violations, and the
/// underlying error (with the row named) on EmptyCredalSet and friends.
Model parse_model(const nlohmann::json& doc);
Model load_model(const std::string& path);

/// Normalized (coherence-tightened) model in the input schema.
nlohmann::ordered_json model_to_json(const Model& model);

/// Applies the recognised keys of a JSON object onto `cfg`.
void apply_config(Config& cfg, const nlohmann::json& overrides);
nlohmann::ordered_json config_to_json(const Config& cfg);

/// "vacuous", "vacuous_on:a,b", "point:a", "precise:0.5,0.5", or a JSON
/// object in the model's "initial" schema.
IefHandle parse_initial(const StateSpace& space, const std::string& spec);
IefHandle parse_initial_json(const StateSpace& space, const nlohmann::json& spec);

/// "indicator:a,b" or an explicit comma separated value list.
Gamble parse_gamble(const StateSpace& space, const std::string& spec);

/// Rounds to 12 significant digits for report output.
double report_number(double v);

} // namespace imc::cli
