#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "delannoy/delannic.hpp"
#include "delannoy/functor.hpp"
#include "delannoy/linear.hpp"
#include "delannoy/order.hpp"

namespace delannoy {

using json = nlohmann::json;

// Schema names carry a version suffix; readers accept exactly these.
inline constexpr const char* kGSetSchema = "delannoy/gset@1";
inline constexpr const char* kMorphismSchema = "delannoy/morphism@1";
inline constexpr const char* kOrderedSchema = "delannoy/ordered@1";
inline constexpr const char* kProfileSchema = "delannoy/profile@1";
inline constexpr const char* kFunctorSchema = "delannoy/functor@1";

// Raised on malformed documents; path is a JSON pointer into the input.
struct SchemaError : std::invalid_argument {
    std::string path;
    SchemaError(const std::string& path, const std::string& what)
        : std::invalid_argument(path + ": " + what), path(path) {}
};

json to_json(const GSet& x);
json to_json(const Morphism& f);
json to_json(const OrderedGSet& o);
json to_json(const DelannicProfile& p);
json to_json(const TensorFunctor& F);

GSet gset_from_json(const json& j);
Morphism morphism_from_json(const json& j);
OrderedGSet ordered_from_json(const json& j);

// Functor documents hold either "expr" or "generator"; the functor is rebuilt
// and re-verified on load.
std::shared_ptr<TensorFunctor> functor_from_json(const json& j);

// Two-slot component <-> {"parents": [a, b], "pattern": "LBR|RL"}.
json component_json(const Component& c);
Component component_from_json(const json& j, int r, const std::string& path);

json read_json_file(const std::string& file);

}  // namespace delannoy
