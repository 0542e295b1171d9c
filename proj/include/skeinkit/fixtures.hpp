#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "skeinkit/diagram.hpp"
#include "skeinkit/error.hpp"

namespace skeinkit {

struct FixtureRecord {
    std::string name;
    std::string pd_code;
    int crossing_number = 0;
    bool adequate = false;
    int writhe = 0;
    Diagram diagram;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
        if (quoted) {
            if (ch == '"')
                quoted = false;
            else
                cur.push_back(ch);
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace detail

// Parses and validates fixtures from CSV text: the PD must parse and every
// declared value must match what the engine computes.  Returns the number of
// ignored trailing columns through extra_columns when non-null.
inline std::vector<FixtureRecord> load_fixtures_text(const std::string& text,
                                                     int* extra_columns = nullptr) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::INCONSISTENT_INPUT, "empty fixture file");
    auto header = detail::split_csv_line(line);
    const std::vector<std::string> expected = {"name", "pd_code", "crossing_number",
                                               "adequate", "writhe"};
    for (size_t i = 0; i < expected.size(); ++i) {
        if (i >= header.size() || header[i] != expected[i])
            throw Error(ErrorCode::INCONSISTENT_INPUT,
                        "fixture header must start with name,pd_code,crossing_number,"
                        "adequate,writhe");
    }
    if (extra_columns)
        *extra_columns = static_cast<int>(header.size() - expected.size());

    std::vector<FixtureRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = detail::split_csv_line(line);
        if (f.size() < 5)
            throw Error(ErrorCode::INCONSISTENT_INPUT, "short fixture row: " + line);
        FixtureRecord r;
        r.name = f[0];
        r.pd_code = f[1];
        r.crossing_number = std::stoi(f[2]);
        r.adequate = f[3] == "Y";
        r.writhe = std::stoi(f[4]);
        r.diagram = parse_pd(r.pd_code);
        r.diagram.name = r.name;
        AdequacyReport rep = adequacy(r.diagram);
        const bool adq = rep.a_adequate && rep.b_adequate;
        if (r.diagram.c() != r.crossing_number || r.diagram.writhe() != r.writhe ||
            adq != r.adequate)
            throw Error(ErrorCode::INCONSISTENT_INPUT,
                        "declared fixture values disagree with computed ones for " +
                            r.name);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<FixtureRecord> load_fixtures_file(const std::string& path,
                                                     int* extra_columns = nullptr) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::INCONSISTENT_INPUT, "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return load_fixtures_text(ss.str(), extra_columns);
}

}  // namespace skeinkit
