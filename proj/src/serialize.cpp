#include "madqueue/serialize.hpp"

#include <fmt/format.h>

#include "madqueue/error.hpp"

namespace madqueue {

void to_json(nlohmann::json& j, const AmbiguitySet& set) {
    j = {{"a", set.a}, {"b", set.b}, {"mu", set.mu}, {"d", set.d}};
    j["beta"] = set.beta ? nlohmann::json(*set.beta) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, AmbiguitySet& set) {
    set.a = j.at("a").get<double>();
    set.b = j.at("b").get<double>();
    set.mu = j.at("mu").get<double>();
    set.d = j.contains("d") ? j.at("d").get<double>() : j.at("mad").get<double>();
    set.beta.reset();
    if (j.contains("beta") && !j.at("beta").is_null()) set.beta = j.at("beta").get<double>();
}

void to_json(nlohmann::json& j, const DiscreteDistribution& law) {
    j = {{"points", std::vector<double>(law.points().begin(), law.points().end())},
         {"probs", std::vector<double>(law.probs().begin(), law.probs().end())}};
}

void from_json(const nlohmann::json& j, DiscreteDistribution& law) {
    law = DiscreteDistribution::from_atoms(j.at("points").get<std::vector<double>>(),
                                           j.at("probs").get<std::vector<double>>());
}

namespace {

template <typename T>
T parse_as(const std::string& text, const char* what) {
    try {
        return nlohmann::json::parse(text).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadParameter, fmt::format("bad {} JSON: {}", what, e.what()));
    }
}

}  // namespace

AmbiguitySet parse_ambiguity(const std::string& text) {
    return parse_as<AmbiguitySet>(text, "ambiguity set");
}

DiscreteDistribution parse_distribution(const std::string& text) {
    return parse_as<DiscreteDistribution>(text, "distribution");
}

}  // namespace madqueue
