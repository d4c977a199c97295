#pragma once

// Algebra bundles: the JSON file format read and written by the CLI.
// Emission is canonical (fixed key order, sorted brackets, fixed layout),
// so emit(parse(text)) == text for any canonical text.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homext/doubleext.hpp"
#include "homext/report.hpp"

namespace homext {

inline constexpr const char* kBundleVersion = "1";

struct ExtensionBlock {
    std::string derivation;  // key into Bundle::derivations
    Vec x0;
    Scalar lambda = 1;
    Scalar lambda0 = 0;
    Scalar estar_norm = 0;
    std::optional<PExtensionData> pdata;
};

struct Bundle {
    HomLieAlgebra algebra;
    std::optional<BilinearForm> form;
    std::optional<PStructure> pmap;
    std::vector<std::pair<std::string, Derivation>> derivations;  // sorted by name on emit
    std::optional<ExtensionBlock> extension;

    const Derivation* find_derivation(const std::string& name) const;
};

// Throws Error(ParseError) on malformed text or out-of-range integers.
Bundle parse_bundle(const std::string& text);
std::string emit_bundle(const Bundle& b);

Bundle read_bundle_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// The extension block resolved against the bundle's derivations.
DoubleExtensionData extension_data(const Bundle& b);

// Report as JSON: checks in order, then params, then the summary counts.
std::string emit_report(const Report& r);

// Canonical layout: scalars, flat arrays and flat objects on one line,
// everything else one element per line with two-space indentation.
std::string emit_canonical(const nlohmann::ordered_json& j);

} // namespace homext
