#include "gridups/dataset.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gridups/errors.hpp"

#ifndef GRIDUPS_DATA_DIR
#define GRIDUPS_DATA_DIR "data"
#endif

namespace gridups {

bool DatasetEntry::has_tag(std::string_view tag) const {
    return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

Dataset::Dataset(std::string dir, std::vector<DatasetEntry> entries)
    : dir_(std::move(dir)), entries_(std::move(entries)) {}

const DatasetEntry* Dataset::find(std::string_view name) const {
    for (const auto& e : entries_)
        if (e.name == name) return &e;
    return nullptr;
}

const DatasetEntry& Dataset::at(std::string_view name) const {
    if (const auto* e = find(name)) return *e;
    throw ValidationError("no dataset entry named \"" + std::string(name) + "\"");
}

GridDiagram Dataset::summand_grid(const SummandRef& ref) const {
    const auto& g = at(ref.entry).grid;
    return ref.mirror ? reflect_horizontal(g) : g;
}

std::optional<std::pair<GridDiagram, GridDiagram>> Dataset::summands_of(const DatasetEntry& e) const {
    if (e.summands.size() != 2) return std::nullopt;
    return std::make_pair(summand_grid(e.summands[0]), summand_grid(e.summands[1]));
}

std::string default_data_dir() {
    if (const char* env = std::getenv("GRIDUPS_DATA"); env && *env) return env;
    return GRIDUPS_DATA_DIR;
}

namespace {

DatasetEntry parse_entry(const nlohmann::json& j, const std::filesystem::path& dir) {
    DatasetEntry e;
    e.name = j.at("name").get<std::string>();
    e.file = j.at("file").get<std::string>();
    e.grid = load_grid_file((dir / e.file).string());
    e.grid.set_name(e.name);
    for (const auto& term : j.at("alexander")) {
        const auto exponent = term.at(0).get<int>();
        const auto coeff = term.at(1).get<std::int64_t>();
        if (coeff != 0) e.alexander.coeffs[exponent] += coeff;
    }
    if (j.contains("sigma")) e.sigma = j.at("sigma").get<int>();
    if (j.contains("upsilon")) {
        std::vector<Breakpoint> pts;
        for (const auto& p : j.at("upsilon"))
            pts.push_back({parse_rational(p.at(0).get<std::string>()), parse_rational(p.at(1).get<std::string>())});
        e.expected_upsilon = PLFunction(std::move(pts));
    }
    if (j.contains("tags")) e.tags = j.at("tags").get<std::vector<std::string>>();
    if (j.contains("summands")) {
        for (const auto& s : j.at("summands"))
            e.summands.push_back({s.at("entry").get<std::string>(), s.value("mirror", false)});
        if (e.summands.size() != 2) throw ValidationError(e.name + ": a connected sum needs exactly two summands");
    }
    return e;
}

} // namespace

Dataset load_dataset(const std::string& dir, bool certify) {
    const std::filesystem::path root(dir);
    std::ifstream in(root / "manifest.json");
    if (!in) throw ValidationError("cannot open " + (root / "manifest.json").string());
    std::vector<DatasetEntry> entries;
    try {
        const auto j = nlohmann::json::parse(in);
        for (const auto& item : j.at("entries")) entries.push_back(parse_entry(item, root));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed manifest: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("manifest: ") + e.what());
    }
    Dataset ds(dir, std::move(entries));
    for (const auto& e : ds.entries()) {
        for (const auto& s : e.summands) {
            if (!ds.find(s.entry))
                throw ValidationError(e.name + ": unknown summand \"" + s.entry + "\"");
        }
    }
    if (certify) {
        // The census only streams states, so it runs past the interactive cap.
        const SizeLimits census_limits{10};
        for (const auto& e : ds.entries()) {
            require_knot(e.grid);
            const auto delta = alexander_from_euler(state_census(e.grid, census_limits), e.grid.size());
            if (delta != e.alexander) {
                throw ValidationError(e.name + ": grid gives Delta = " + delta.to_string() + ", manifest says " +
                                      e.alexander.to_string());
            }
        }
    }
    return ds;
}

SignatureCertificate certify_signature(const DatasetEntry& e, const SizeLimits& limits) {
    if (!e.sigma) throw ValidationError(e.name + " has no recorded signature");
    SignatureCertificate cert;
    cert.tilde = tilde_homology(e.grid, limits);
    cert.diagonal = thin_diagonal(cert.tilde);
    if (!cert.diagonal) throw ValidationError(e.name + ": homology is not thin");
    if (2 * *cert.diagonal != *e.sigma) {
        throw ValidationError(e.name + ": thin diagonal M - A = " + std::to_string(*cert.diagonal) +
                              " gives sigma " + std::to_string(2 * *cert.diagonal) + ", manifest says " +
                              std::to_string(*e.sigma));
    }
    return cert;
}

} // namespace gridups
