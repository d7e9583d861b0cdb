#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "gridups/errors.hpp"
#include "gridups/grid.hpp"

namespace gridups {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string where(int line, int field = 0) {
    std::string w = "line " + std::to_string(line);
    if (field > 0) w += ", field " + std::to_string(field);
    return w + ": ";
}

// Parses "<label>: c0 c1 ..." and checks that the entries form a permutation.
std::vector<int> parse_marking_line(std::string_view line, char label, int line_no) {
    if (line.size() < 2 || line[0] != label || line[1] != ':') {
        throw ValidationError(where(line_no) + "expected a line starting with \"" +
                              std::string(1, label) + ":\"");
    }
    std::vector<int> cols;
    std::string_view rest = line.substr(2);
    int field = 0;
    while (true) {
        const auto start = rest.find_first_not_of(" \t\r");
        if (start == std::string_view::npos) break;
        rest.remove_prefix(start);
        const auto len = std::min(rest.find_first_of(" \t\r"), rest.size());
        const std::string_view token = rest.substr(0, len);
        rest.remove_prefix(len);
        ++field;
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw ValidationError(where(line_no, field) + "\"" + std::string(token) +
                                  "\" is not a column index");
        }
        cols.push_back(value);
    }
    const int n = static_cast<int>(cols.size());
    std::vector<int> first_field(static_cast<std::size_t>(std::max(n, 0)), 0);
    for (int i = 0; i < n; ++i) {
        const int c = cols[static_cast<std::size_t>(i)];
        if (c < 0 || c >= n) {
            throw ValidationError(where(line_no, i + 1) + "column " + std::to_string(c) +
                                  " outside 0.." + std::to_string(n - 1) +
                                  " (not a permutation)");
        }
        auto& seen = first_field[static_cast<std::size_t>(c)];
        if (seen != 0) {
            throw ValidationError(where(line_no, i + 1) + "column " + std::to_string(c) +
                                  " repeats field " + std::to_string(seen) + " (not a permutation)");
        }
        seen = i + 1;
    }
    return cols;
}

} // namespace

GridDiagram parse_grid(std::string_view text, std::string name) {
    std::vector<std::pair<int, std::string_view>> lines;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        lines.emplace_back(line_no, line);
    }
    if (lines.size() < 2) throw ValidationError("expected an \"O:\" line followed by an \"X:\" line");
    if (lines.size() > 2) throw ValidationError(where(lines[2].first) + "unexpected extra line");

    auto o = parse_marking_line(lines[0].second, 'O', lines[0].first);
    auto x = parse_marking_line(lines[1].second, 'X', lines[1].first);
    if (o.size() != x.size()) {
        throw ValidationError(where(lines[1].first) + "X line has " + std::to_string(x.size()) +
                              " entries but O line has " + std::to_string(o.size()));
    }
    if (o.size() < 2) throw ValidationError(where(lines[0].first) + "grid size must be at least 2");
    for (std::size_t r = 0; r < o.size(); ++r) {
        if (o[r] == x[r]) {
            throw ValidationError(where(lines[1].first, static_cast<int>(r) + 1) +
                                  "marking collision in row " + std::to_string(r));
        }
    }
    return GridDiagram(std::move(o), std::move(x), std::move(name));
}

GridDiagram parse_grid_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("malformed grid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("O") || !j.contains("X"))
        throw ValidationError("grid JSON needs \"O\" and \"X\" arrays");
    std::vector<int> o;
    std::vector<int> x;
    try {
        o = j.at("O").get<std::vector<int>>();
        x = j.at("X").get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError("grid JSON \"O\"/\"X\" must be integer arrays");
    }
    if (j.contains("n") && (!j["n"].is_number_integer() || j["n"].get<std::size_t>() != o.size()))
        throw ValidationError("grid JSON \"n\" does not match the length of \"O\"");
    std::string name = j.value("name", std::string{});
    return GridDiagram(std::move(o), std::move(x), std::move(name));
}

std::string format_grid(const GridDiagram& g) {
    std::ostringstream out;
    if (!g.name().empty()) out << "# " << g.name() << '\n';
    out << "O:";
    for (int c : g.o()) out << ' ' << c;
    out << "\nX:";
    for (int c : g.x()) out << ' ' << c;
    out << '\n';
    return out.str();
}

std::string format_grid_json(const GridDiagram& g) {
    nlohmann::json j;
    j["n"] = g.size();
    j["O"] = std::vector<int>(g.o().begin(), g.o().end());
    j["X"] = std::vector<int>(g.x().begin(), g.x().end());
    if (!g.name().empty()) j["name"] = g.name();
    return j.dump();
}

GridDiagram load_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open grid file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::filesystem::path p(path);
    if (p.extension() == ".json") {
        auto g = parse_grid_json(buffer.str());
        if (g.name().empty()) g.set_name(p.stem().string());
        return g;
    }
    try {
        return parse_grid(buffer.str(), p.stem().string());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

} // namespace gridups
