#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gridups/grid.hpp"
#include "gridups/oracle.hpp"
#include "gridups/upsilon.hpp"

namespace gridups {

/// A dataset entry used as a connected-sum summand, optionally mirrored.
struct SummandRef {
    std::string entry;
    bool mirror = false;
};

struct DatasetEntry {
    std::string name;
    std::string file;  // relative to the dataset directory
    GridDiagram grid{{0, 1}, {1, 0}};
    LaurentPoly alexander;
    std::optional<int> sigma;                  // alternating knots only
    std::optional<PLFunction> expected_upsilon;
    std::vector<std::string> tags;
    std::vector<SummandRef> summands;          // empty unless a connected sum

    bool has_tag(std::string_view tag) const;
};

class Dataset {
public:
    Dataset(std::string dir, std::vector<DatasetEntry> entries);

    const std::string& dir() const noexcept { return dir_; }
    const std::vector<DatasetEntry>& entries() const noexcept { return entries_; }
    const DatasetEntry* find(std::string_view name) const;
    /// Throws ValidationError for unknown names.
    const DatasetEntry& at(std::string_view name) const;

    GridDiagram summand_grid(const SummandRef& ref) const;
    std::optional<std::pair<GridDiagram, GridDiagram>> summands_of(const DatasetEntry& e) const;

private:
    std::string dir_;
    std::vector<DatasetEntry> entries_;
};

/// $GRIDUPS_DATA if set, otherwise the data/ directory of the source tree.
std::string default_data_dir();

/// Reads manifest.json and every grid it lists. With `certify`, each entry's
/// Alexander polynomial is recomputed from the grid (Euler characteristic of
/// the state census) and must match the manifest.
Dataset load_dataset(const std::string& dir = default_data_dir(), bool certify = true);

struct SignatureCertificate {
    BigradedDims tilde;
    std::optional<int> diagonal;  // M - A if thin
};

/// Computes the tilde homology and checks that it is thin with
/// 2 * (M - A) equal to the recorded signature. Throws ValidationError on a
/// mismatch or when the entry has no recorded signature.
SignatureCertificate certify_signature(const DatasetEntry& e, const SizeLimits& limits = {});

} // namespace gridups
