#pragma once

#include "ihom/homology.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ihom {

/// On-disk description of a filtered complex. See README for the format.
struct ComplexDocument {
    int format = 1;
    std::string name;
    std::vector<std::string> tags;
    int formal_dim = 0;
    std::vector<std::vector<std::int64_t>> simplices;
    std::map<std::int64_t, int> vertex_filtration;
    std::vector<std::pair<std::vector<std::int64_t>, int>> simplex_filtration;
    std::map<std::int64_t, Point> coordinates;
    /// Named perversity specs, as accepted by parse_perversity.
    std::map<std::string, std::string> perversities;
    std::optional<ChainTriangulation> chains;

    bool has_tag(const std::string& t) const;
};

/// Throws ParseError (with line and column) or ValidationError.
ComplexDocument parse_document(const std::string& text);
ComplexDocument load_document(const std::filesystem::path& path);
/// Canonical form: sorted keys, two-space indent, trailing newline.
std::string serialize_document(const ComplexDocument& doc);

RawComplex document_raw(const ComplexDocument& doc);
FilteredComplex document_complex(const ComplexDocument& doc);
ComplexDocument document_from_complex(const FilteredComplex& X, const std::string& name);

/// Perversity specs:
///   0 | m | n | t            GM presets (also zero, lower, upper, top)
///   k:<v>                    constant value on singular strata
///   c2:0,c3:1                by codimension
///   s0:1,s3:-inf             by stratum id (every singular stratum listed)
///   any name from the document's perversity table
Perversity parse_perversity(const std::string& spec, const FilteredComplex& X, const ComplexDocument* doc = nullptr);

/// Documents in a directory, sorted by file name.
std::vector<std::pair<std::filesystem::path, ComplexDocument>> load_corpus(const std::filesystem::path& dir);

std::string fnv1a64_hex(const std::string& data);

}  // namespace ihom
