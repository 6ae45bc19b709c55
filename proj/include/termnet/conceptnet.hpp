#pragma once
// Conceptual structures over acquisition links. Terms chained by
// coordination variants form equivalence classes; insertion links between
// classes form a directed specialization graph, oriented source -> candidate
// (toward the more specific term, heuristically). Cycles are permitted.

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "termnet/acquisition.hpp"
#include "termnet/term.hpp"

namespace termnet {

using TermTable = std::unordered_map<TermId, Term>;

// An equivalence class of terms connected by coordination variants. Ids are
// positions in the class list, which is sorted by representative text.
struct CoordClass {
    int id = 0;
    TermId representative = 0;       // lexicographically smallest member
    std::vector<TermId> members;     // sorted by text, >= 1
};

struct ClassingOptions {
    // When false, head-coordination links (the candidate replaces the head)
    // do not join classes; argument coordinations still do.
    bool include_head_coordinations = true;
    // Extra merges applied after automatic classing, as pairs of term texts.
    // Pairs naming unknown terms are ignored.
    std::vector<std::pair<std::string, std::string>> conflations;
    // Grammar used to recognize head-coordination rules; the bundled default
    // when null.
    const std::vector<MetaRule>* grammar = nullptr;
};

// Connected components of the undirected graph whose edges are
// coordination-family links; universe terms without such links become
// singletons.
std::vector<CoordClass> build_coord_classes(const std::vector<AcquisitionLink>& links,
                                            const std::vector<TermId>& universe, const TermTable& table,
                                            const ClassingOptions& options = {});

struct SpecEdge {
    int from = 0;
    int to = 0;
    std::vector<AcquisitionLink> witnesses;  // insertion links, >= 1
};

// Directed graph over coordination classes induced by insertion links.
// Holds its own class list: classes are extended with singletons for
// insertion-link terms the input partition did not cover (ids are
// renumbered by representative text when that happens).
struct SpecGraph {
    std::vector<CoordClass> classes;
    std::vector<SpecEdge> edges;  // sorted by (from, to); no self-loops
};

SpecGraph build_spec_graph(const std::vector<AcquisitionLink>& links, std::vector<CoordClass> classes,
                           const TermTable& table);

// Conflation file: one merge per line, two term texts separated by ` == `.
std::vector<std::pair<std::string, std::string>> load_conflations(std::istream& in);
std::vector<std::pair<std::string, std::string>> load_conflations_file(const std::string& path);

enum class ExportFormat { Dot, Json };

ExportFormat export_format_from_name(std::string_view name);  // "dot" | "json"

// Byte-deterministic renderings. The DOT form draws classes as clusters;
// coordination arrows keep their original link direction, specialization
// edges carry witness counts as labels.
std::string export_classes(const std::vector<CoordClass>& classes,
                           const std::vector<AcquisitionLink>& coordination_links, const TermTable& table,
                           ExportFormat format);
std::string export_spec_graph(const SpecGraph& graph, const TermTable& table, ExportFormat format);

// Re-import of the JSON forms, for tooling and round-trip checks. The term
// table is rebuilt from the member texts.
std::vector<CoordClass> import_classes_json(const std::string& text, TermTable& table);
SpecGraph import_spec_graph_json(const std::string& text, TermTable& table);

}  // namespace termnet
