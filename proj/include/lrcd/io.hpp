#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lrcd/network.hpp"

namespace lrcd {

// ---- deterministic JSON emission ----
// Reports must be byte-identical across runs and platforms, with floats at 17
// significant digits; vendor JSON libraries print shortest-round-trip doubles,
// so emission is done by this small ordered value tree instead.
class JsonValue {
public:
    using Array = std::vector<JsonValue>;
    using Object = std::vector<std::pair<std::string, JsonValue>>;  // insertion-ordered

    JsonValue() : kind_(Kind::null) {}
    JsonValue(bool b) : kind_(Kind::boolean), bool_(b) {}
    JsonValue(int v) : kind_(Kind::integer), int_(v) {}
    JsonValue(std::int64_t v) : kind_(Kind::integer), int_(v) {}
    JsonValue(std::uint64_t v) : kind_(Kind::integer), int_(static_cast<std::int64_t>(v)) {}
    JsonValue(double v) : kind_(Kind::real), real_(v) {}
    JsonValue(const char* s) : kind_(Kind::string), string_(s) {}
    JsonValue(std::string s) : kind_(Kind::string), string_(std::move(s)) {}
    JsonValue(Array a) : kind_(Kind::array), array_(std::move(a)) {}
    JsonValue(Object o) : kind_(Kind::object), object_(std::move(o)) {}

    static JsonValue object() { return JsonValue(Object{}); }
    static JsonValue array() { return JsonValue(Array{}); }

    JsonValue& set(const std::string& key, JsonValue value) {
        object_.emplace_back(key, std::move(value));
        return *this;
    }
    void push(JsonValue value) { array_.push_back(std::move(value)); }

    std::string dump(int indent = 2) const;

private:
    enum class Kind { null, boolean, integer, real, string, array, object };
    Kind kind_;
    bool bool_ = false;
    std::int64_t int_ = 0;
    double real_ = 0.0;
    std::string string_;
    Array array_;
    Object object_;

    void write(std::string& out, int indent, int depth) const;
};

std::string format_double_17(double v);

// ---- file formats ----
// Edge list: UTF-8 lines "idA idB" (whitespace separated, arbitrary string
// identifiers); identifiers become dense indices in first-appearance order.
// A line holding a single identifier declares an isolated node, so a node
// set with degree-zero nodes survives a save/load round trip.
// Covariates: CSV "node,<name1>,..."; every network node exactly once.
// Labels: CSV "node,label".

struct LoadedNetwork {
    Network net;
    std::vector<std::string> ids;  // dense index -> identifier
};

struct LoadedCovariates {
    CovariateMatrix x;
    std::vector<std::string> names;
};

LoadedNetwork load_network(const std::string& path);
LoadedCovariates load_covariates(const std::string& path, const std::vector<std::string>& ids);
LabelVector load_labels(const std::string& path, const std::vector<std::string>& ids);
// Label files for metric comparison: node ids must agree between the two files.
std::pair<LabelVector, LabelVector> load_label_pair(const std::string& path_a,
                                                    const std::string& path_b);

void save_network(const std::string& path, const Network& net,
                  const std::vector<std::string>& ids);
void save_covariates(const std::string& path, const CovariateMatrix& x,
                     const std::vector<std::string>& ids,
                     const std::vector<std::string>& names);
void save_labels(const std::string& path, const LabelVector& labels,
                 const std::vector<std::string>& ids);

std::vector<std::string> default_node_ids(int n);  // "n0", "n1", ...

void write_text_file(const std::string& path, const std::string& content);

}  // namespace lrcd
