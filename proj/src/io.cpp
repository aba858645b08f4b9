#include "lrcd/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace lrcd {

std::string format_double_17(double v) {
    if (!std::isfinite(v)) return "null";  // keep the report valid JSON
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonValue::write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
    switch (kind_) {
        case Kind::null: out += "null"; break;
        case Kind::boolean: out += bool_ ? "true" : "false"; break;
        case Kind::integer: out += std::to_string(int_); break;
        case Kind::real: out += format_double_17(real_); break;
        case Kind::string: {
            out += '"';
            for (char c : string_) {
                switch (c) {
                    case '"': out += "\\\""; break;
                    case '\\': out += "\\\\"; break;
                    case '\n': out += "\\n"; break;
                    case '\t': out += "\\t"; break;
                    case '\r': out += "\\r"; break;
                    default:
                        if (static_cast<unsigned char>(c) < 0x20) {
                            char esc[8];
                            std::snprintf(esc, sizeof(esc), "\\u%04x", c);
                            out += esc;
                        } else {
                            out += c;
                        }
                }
            }
            out += '"';
            break;
        }
        case Kind::array: {
            if (array_.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < array_.size(); ++i) {
                out += pad;
                array_[i].write(out, indent, depth + 1);
                if (i + 1 < array_.size()) out += ',';
                out += '\n';
            }
            out += close_pad + "]";
            break;
        }
        case Kind::object: {
            if (object_.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (std::size_t i = 0; i < object_.size(); ++i) {
                out += pad + '"' + object_[i].first + "\": ";
                object_[i].second.write(out, indent, depth + 1);
                if (i + 1 < object_.size()) out += ',';
                out += '\n';
            }
            out += close_pad + "}";
            break;
        }
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError(0, "cannot open file: " + path);
    return in;
}

}  // namespace

LoadedNetwork load_network(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::unordered_map<std::string, int> index;
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;

    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = strip(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        std::istringstream ss(trimmed);
        std::string a, b, extra;
        auto intern = [&](const std::string& id) {
            auto [it, inserted] = index.emplace(id, static_cast<int>(ids.size()));
            if (inserted) ids.push_back(id);
            return it->second;
        };
        if (!(ss >> a)) {
            throw IngestError(line_no, "line " + std::to_string(line_no) +
                                            ": expected node identifiers");
        }
        if (!(ss >> b)) {
            intern(a);  // single identifier declares an isolated node
            continue;
        }
        if (ss >> extra) {
            throw IngestError(line_no, "line " + std::to_string(line_no) +
                                            ": trailing content after two identifiers");
        }
        int ia = intern(a);
        int ib = intern(b);
        if (ia == ib) {
            throw IngestError(line_no,
                              "line " + std::to_string(line_no) + ": self-loop on '" + a + "'");
        }
        auto key = std::minmax(ia, ib);
        if (!seen.insert({key.first, key.second}).second) {
            throw IngestError(line_no, "line " + std::to_string(line_no) +
                                            ": duplicate edge '" + a + " " + b + "'");
        }
        edges.emplace_back(ia, ib);
    }
    return LoadedNetwork{Network(static_cast<int>(ids.size()), std::move(edges)),
                         std::move(ids)};
}

LoadedCovariates load_covariates(const std::string& path,
                                 const std::vector<std::string>& ids) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw IngestError(1, "empty covariate file");
    ++line_no;
    auto header = split_csv_line(strip(line));
    if (header.empty() || strip(header[0]) != "node") {
        throw IngestError(1, "covariate header must start with 'node'");
    }
    std::vector<std::string> names(header.begin() + 1, header.end());
    const int p = static_cast<int>(names.size());
    const int n = static_cast<int>(ids.size());

    std::unordered_map<std::string, int> index;
    for (int i = 0; i < n; ++i) index.emplace(ids[i], i);

    std::vector<double> values(static_cast<std::size_t>(n) * p, 0.0);
    std::vector<char> seen(n, 0);
    std::vector<std::string> unknown;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = strip(line);
        if (trimmed.empty()) continue;
        auto fields = split_csv_line(trimmed);
        if (static_cast<int>(fields.size()) != p + 1) {
            throw IngestError(line_no, "line " + std::to_string(line_no) + ": expected " +
                                            std::to_string(p + 1) + " fields, got " +
                                            std::to_string(fields.size()));
        }
        const std::string node = strip(fields[0]);
        auto it = index.find(node);
        if (it == index.end()) {
            unknown.push_back(node);
            continue;
        }
        if (seen[it->second]) {
            throw IngestError(line_no, "line " + std::to_string(line_no) +
                                            ": duplicate covariate row for '" + node + "'");
        }
        seen[it->second] = 1;
        for (int j = 0; j < p; ++j) {
            try {
                std::size_t pos = 0;
                const std::string f = strip(fields[j + 1]);
                values[static_cast<std::size_t>(it->second) * p + j] = std::stod(f, &pos);
                if (pos != f.size()) throw std::invalid_argument(f);
            } catch (const std::exception&) {
                throw IngestError(line_no, "line " + std::to_string(line_no) +
                                                ": cannot parse value '" + fields[j + 1] + "'");
            }
        }
    }
    std::vector<std::string> missing;
    for (int i = 0; i < n; ++i) {
        if (!seen[i]) missing.push_back(ids[i]);
    }
    if (!missing.empty() || !unknown.empty()) {
        std::string msg = "covariate/network node mismatch;";
        if (!missing.empty()) {
            msg += " missing:";
            for (const auto& id : missing) msg += " '" + id + "'";
        }
        if (!unknown.empty()) {
            msg += " unknown:";
            for (const auto& id : unknown) msg += " '" + id + "'";
        }
        std::vector<std::string> all = missing;
        all.insert(all.end(), unknown.begin(), unknown.end());
        throw JoinError(std::move(all), msg);
    }
    return LoadedCovariates{CovariateMatrix(n, p, std::move(values)), std::move(names)};
}

namespace {

// node,label rows in file order.
std::vector<std::pair<std::string, int>> read_label_rows(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw IngestError(1, "empty label file");
    ++line_no;
    auto header = split_csv_line(strip(line));
    if (header.size() != 2 || strip(header[0]) != "node") {
        throw IngestError(1, "label header must be 'node,<label column>'");
    }
    std::vector<std::pair<std::string, int>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = strip(line);
        if (trimmed.empty()) continue;
        auto fields = split_csv_line(trimmed);
        if (fields.size() != 2) {
            throw IngestError(line_no,
                              "line " + std::to_string(line_no) + ": expected 'node,label'");
        }
        try {
            std::size_t pos = 0;
            const std::string f = strip(fields[1]);
            const int label = std::stoi(f, &pos);
            if (pos != f.size()) throw std::invalid_argument(f);
            rows.emplace_back(strip(fields[0]), label);
        } catch (const std::exception&) {
            throw IngestError(line_no, "line " + std::to_string(line_no) +
                                            ": cannot parse label '" + fields[1] + "'");
        }
    }
    return rows;
}

LabelVector labels_from_rows(std::vector<std::pair<std::string, int>> rows) {
    int max_label = 1;
    std::vector<int> labels;
    labels.reserve(rows.size());
    for (const auto& [node, label] : rows) {
        if (label < 1) throw ConfigError("labels must be >= 1 (node '" + node + "')");
        max_label = std::max(max_label, label);
        labels.push_back(label);
    }
    return LabelVector(std::move(labels), std::max(1, max_label - 1));
}

}  // namespace

LabelVector load_labels(const std::string& path, const std::vector<std::string>& ids) {
    auto rows = read_label_rows(path);
    std::unordered_map<std::string, int> position;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!position.emplace(rows[i].first, static_cast<int>(i)).second) {
            throw JoinError({rows[i].first}, "duplicate label row for '" + rows[i].first + "'");
        }
    }
    std::vector<std::pair<std::string, int>> ordered;
    std::vector<std::string> mismatched;
    for (const auto& id : ids) {
        auto it = position.find(id);
        if (it == position.end()) {
            mismatched.push_back(id);
        } else {
            ordered.push_back(rows[it->second]);
        }
    }
    if (!mismatched.empty() || ordered.size() != rows.size()) {
        for (const auto& [node, label] : rows) {
            if (std::find(ids.begin(), ids.end(), node) == ids.end()) {
                mismatched.push_back(node);
            }
        }
        throw JoinError(std::move(mismatched), "label/network node mismatch");
    }
    return labels_from_rows(std::move(ordered));
}

std::pair<LabelVector, LabelVector> load_label_pair(const std::string& path_a,
                                                    const std::string& path_b) {
    auto rows_a = read_label_rows(path_a);
    auto rows_b = read_label_rows(path_b);
    std::unordered_map<std::string, int> index_b;
    for (std::size_t i = 0; i < rows_b.size(); ++i) {
        if (!index_b.emplace(rows_b[i].first, static_cast<int>(i)).second) {
            throw JoinError({rows_b[i].first},
                            "duplicate label row for '" + rows_b[i].first + "'");
        }
    }
    std::vector<std::pair<std::string, int>> aligned_b;
    std::vector<std::string> mismatched;
    for (const auto& [node, label] : rows_a) {
        auto it = index_b.find(node);
        if (it == index_b.end()) {
            mismatched.push_back(node);
        } else {
            aligned_b.push_back(rows_b[it->second]);
        }
    }
    if (!mismatched.empty() || rows_a.size() != rows_b.size()) {
        for (const auto& [node, label] : rows_b) {
            bool found = false;
            for (const auto& [na, la] : rows_a) {
                if (na == node) {
                    found = true;
                    break;
                }
            }
            if (!found) mismatched.push_back(node);
        }
        throw JoinError(std::move(mismatched), "label files disagree on node identifiers");
    }
    // Use a common K so group counts line up.
    int max_label = 2;
    for (const auto& [node, label] : rows_a) max_label = std::max(max_label, label);
    for (const auto& [node, label] : aligned_b) max_label = std::max(max_label, label);
    std::vector<int> a_labels, b_labels;
    for (const auto& [node, label] : rows_a) a_labels.push_back(label);
    for (const auto& [node, label] : aligned_b) b_labels.push_back(label);
    return {LabelVector(std::move(a_labels), max_label - 1),
            LabelVector(std::move(b_labels), max_label - 1)};
}

void save_network(const std::string& path, const Network& net,
                  const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& [a, b] : net.edges()) {
        out += ids[a];
        out += ' ';
        out += ids[b];
        out += '\n';
    }
    // Isolated nodes as bare identifiers so the node set round-trips.
    for (int i = 0; i < net.node_count(); ++i) {
        if (net.degree(i) == 0) out += ids[i] + '\n';
    }
    write_text_file(path, out);
}

void save_covariates(const std::string& path, const CovariateMatrix& x,
                     const std::vector<std::string>& ids,
                     const std::vector<std::string>& names) {
    std::string out = "node";
    for (const auto& name : names) out += "," + name;
    out += '\n';
    for (int i = 0; i < x.rows(); ++i) {
        out += ids[i];
        for (int j = 0; j < x.cols(); ++j) out += "," + format_double_17(x(i, j));
        out += '\n';
    }
    write_text_file(path, out);
}

void save_labels(const std::string& path, const LabelVector& labels,
                 const std::vector<std::string>& ids) {
    std::string out = "node,label\n";
    for (int i = 0; i < labels.size(); ++i) {
        out += ids[i] + "," + std::to_string(labels[i]) + '\n';
    }
    write_text_file(path, out);
}

std::vector<std::string> default_node_ids(int n) {
    std::vector<std::string> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = "n" + std::to_string(i);
    return ids;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

}  // namespace lrcd
