#include "termnet/conceptnet.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "termnet/errors.hpp"

namespace termnet {

namespace {

using ordered_json = nlohmann::ordered_json;

class UnionFind {
public:
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

    int add() {
        parent_.push_back(static_cast<int>(parent_.size()));
        return parent_.back();
    }

private:
    std::vector<int> parent_;
};

std::string text_of(const TermTable& table, TermId id) {
    auto it = table.find(id);
    return it == table.end() ? "?" : it->second.text();
}

bool is_head_coordination(const std::string& rule_name, const std::vector<MetaRule>& grammar) {
    for (const MetaRule& rule : grammar)
        if (rule.name == rule_name) return rule.head_coordination();
    return false;  // unknown rules count as argument coordinations
}

std::string dot_quote(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::vector<CoordClass> build_coord_classes(const std::vector<AcquisitionLink>& links,
                                            const std::vector<TermId>& universe, const TermTable& table,
                                            const ClassingOptions& options) {
    const std::vector<MetaRule>& grammar = options.grammar ? *options.grammar : default_metagrammar();

    std::vector<std::pair<TermId, TermId>> edges;
    std::vector<TermId> ids = universe;
    for (const AcquisitionLink& link : links) {
        if (link.family != Family::Coordination) continue;
        if (!options.include_head_coordinations && is_head_coordination(link.meta_rule, grammar)) continue;
        edges.emplace_back(link.source, link.candidate);
        ids.push_back(link.source);
        ids.push_back(link.candidate);
    }

    // Stable node numbering by term text.
    std::sort(ids.begin(), ids.end(),
              [&table](TermId a, TermId b) { return text_of(table, a) < text_of(table, b); });
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::unordered_map<TermId, int> index;
    UnionFind uf;
    for (TermId id : ids) index.emplace(id, uf.add());

    for (const auto& [a, b] : edges) uf.unite(index.at(a), index.at(b));

    std::unordered_map<std::string, TermId> by_text;
    for (TermId id : ids) by_text.emplace(text_of(table, id), id);
    for (const auto& [left, right] : options.conflations) {
        auto a = by_text.find(left);
        auto b = by_text.find(right);
        if (a == by_text.end() || b == by_text.end()) continue;
        uf.unite(index.at(a->second), index.at(b->second));
    }

    std::map<int, std::vector<TermId>> components;
    for (TermId id : ids) components[uf.find(index.at(id))].push_back(id);

    std::vector<CoordClass> classes;
    classes.reserve(components.size());
    for (auto& [root, members] : components) {
        CoordClass cls;
        cls.members = std::move(members);  // already sorted by text via node order
        cls.representative = cls.members.front();
        classes.push_back(std::move(cls));
    }
    std::sort(classes.begin(), classes.end(), [&table](const CoordClass& a, const CoordClass& b) {
        return text_of(table, a.representative) < text_of(table, b.representative);
    });
    for (size_t i = 0; i < classes.size(); ++i) classes[i].id = static_cast<int>(i);
    return classes;
}

SpecGraph build_spec_graph(const std::vector<AcquisitionLink>& links, std::vector<CoordClass> classes,
                           const TermTable& table) {
    std::unordered_map<TermId, size_t> member_class;
    for (size_t i = 0; i < classes.size(); ++i)
        for (TermId id : classes[i].members) member_class.emplace(id, i);

    // Singleton classes for insertion-link terms outside the partition.
    std::vector<TermId> missing;
    for (const AcquisitionLink& link : links) {
        if (link.family != Family::Insertion) continue;
        for (TermId id : {link.source, link.candidate})
            if (!member_class.count(id)) missing.push_back(id);
    }
    std::sort(missing.begin(), missing.end(),
              [&table](TermId a, TermId b) { return text_of(table, a) < text_of(table, b); });
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    for (TermId id : missing) {
        member_class.emplace(id, classes.size());
        classes.push_back(CoordClass{0, id, {id}});
    }

    std::sort(classes.begin(), classes.end(), [&table](const CoordClass& a, const CoordClass& b) {
        return text_of(table, a.representative) < text_of(table, b.representative);
    });
    member_class.clear();
    for (size_t i = 0; i < classes.size(); ++i) {
        classes[i].id = static_cast<int>(i);
        for (TermId id : classes[i].members) member_class.emplace(id, i);
    }

    std::map<std::pair<int, int>, std::vector<AcquisitionLink>> edge_map;
    for (const AcquisitionLink& link : links) {
        if (link.family != Family::Insertion) continue;
        int from = static_cast<int>(member_class.at(link.source));
        int to = static_cast<int>(member_class.at(link.candidate));
        if (from == to) continue;  // conflation evidence, not specialization
        edge_map[{from, to}].push_back(link);
    }

    SpecGraph graph;
    graph.classes = std::move(classes);
    for (auto& [key, witnesses] : edge_map) {
        std::sort(witnesses.begin(), witnesses.end(),
                  [&table](const AcquisitionLink& a, const AcquisitionLink& b) {
                      auto key = [&table](const AcquisitionLink& l) {
                          return std::make_tuple(text_of(table, l.source), text_of(table, l.candidate),
                                                 l.meta_rule, l.sentence_id, l.start, l.end, l.cycle);
                      };
                      return key(a) < key(b);
                  });
        witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
        graph.edges.push_back(SpecEdge{key.first, key.second, std::move(witnesses)});
    }
    return graph;
}

std::vector<std::pair<std::string, std::string>> load_conflations(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto sep = line.find(" == ");
        if (sep == std::string::npos) throw ParseError("expected `term == term`", line_no);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string left = trim(line.substr(0, sep));
        std::string right = trim(line.substr(sep + 4));
        if (left.empty() || right.empty()) throw ParseError("expected `term == term`", line_no);
        pairs.emplace_back(std::move(left), std::move(right));
    }
    return pairs;
}

std::vector<std::pair<std::string, std::string>> load_conflations_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open conflation file '" + path + "'");
    return load_conflations(in);
}

ExportFormat export_format_from_name(std::string_view name) {
    if (name == "dot") return ExportFormat::Dot;
    if (name == "json") return ExportFormat::Json;
    throw DataError("unknown export format '" + std::string(name) + "'");
}

namespace {

ordered_json classes_to_json(const std::vector<CoordClass>& classes, const TermTable& table) {
    ordered_json out = ordered_json::array();
    for (const CoordClass& cls : classes) {
        ordered_json members = ordered_json::array();
        for (TermId id : cls.members) members.push_back(text_of(table, id));
        out.push_back({{"id", cls.id}, {"representative", text_of(table, cls.representative)},
                       {"members", std::move(members)}});
    }
    return out;
}

ordered_json link_to_json(const AcquisitionLink& link, const TermTable& table) {
    return {{"source", text_of(table, link.source)}, {"candidate", text_of(table, link.candidate)},
            {"family", std::string(family_name(link.family))}, {"rule", link.meta_rule},
            {"sentence", link.sentence_id}, {"start", link.start}, {"end", link.end},
            {"cycle", link.cycle}};
}

}  // namespace

std::string export_classes(const std::vector<CoordClass>& classes,
                           const std::vector<AcquisitionLink>& coordination_links, const TermTable& table,
                           ExportFormat format) {
    if (format == ExportFormat::Json) {
        ordered_json doc;
        doc["classes"] = classes_to_json(classes, table);
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "digraph coordination_classes {\n";
    out << "  rankdir=LR;\n  node [shape=box];\n";
    for (const CoordClass& cls : classes) {
        out << "  subgraph cluster_" << cls.id << " {\n";
        out << "    label=" << dot_quote(text_of(table, cls.representative)) << ";\n";
        for (TermId id : cls.members) out << "    " << dot_quote(text_of(table, id)) << ";\n";
        out << "  }\n";
    }
    std::vector<std::pair<std::string, std::string>> arrows;
    for (const AcquisitionLink& link : coordination_links) {
        if (link.family != Family::Coordination) continue;
        arrows.emplace_back(text_of(table, link.source), text_of(table, link.candidate));
    }
    std::sort(arrows.begin(), arrows.end());
    arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
    for (const auto& [from, to] : arrows)
        out << "  " << dot_quote(from) << " -> " << dot_quote(to) << ";\n";
    out << "}\n";
    return out.str();
}

std::string export_spec_graph(const SpecGraph& graph, const TermTable& table, ExportFormat format) {
    if (format == ExportFormat::Json) {
        ordered_json doc;
        doc["edge_direction"] = "toward-specific";
        doc["classes"] = classes_to_json(graph.classes, table);
        ordered_json edges = ordered_json::array();
        for (const SpecEdge& edge : graph.edges) {
            ordered_json witnesses = ordered_json::array();
            for (const AcquisitionLink& link : edge.witnesses) witnesses.push_back(link_to_json(link, table));
            edges.push_back({{"from", edge.from}, {"to", edge.to}, {"witnesses", std::move(witnesses)}});
        }
        doc["edges"] = std::move(edges);
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "digraph specialization {\n";
    out << "  // edges point toward the more specific class\n";
    out << "  compound=true;\n  node [shape=box];\n";
    for (const CoordClass& cls : graph.classes) {
        out << "  subgraph cluster_" << cls.id << " {\n";
        out << "    label=" << dot_quote(text_of(table, cls.representative)) << ";\n";
        for (TermId id : cls.members) out << "    " << dot_quote(text_of(table, id)) << ";\n";
        out << "  }\n";
    }
    for (const SpecEdge& edge : graph.edges) {
        const CoordClass& from = graph.classes[edge.from];
        const CoordClass& to = graph.classes[edge.to];
        out << "  " << dot_quote(text_of(table, from.representative)) << " -> "
            << dot_quote(text_of(table, to.representative)) << " [ltail=cluster_" << from.id
            << ", lhead=cluster_" << to.id << ", label=\"" << edge.witnesses.size() << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

Term term_from_text(const std::string& text) { return parse_term(text); }

TermId intern_term(const std::string& text, TermTable& table) {
    Term term = term_from_text(text);
    TermId id = term.id();
    table.emplace(id, std::move(term));
    return id;
}

std::vector<CoordClass> classes_from_json(const ordered_json& doc, TermTable& table) {
    std::vector<CoordClass> classes;
    for (const auto& entry : doc) {
        CoordClass cls;
        cls.id = entry.at("id").get<int>();
        cls.representative = intern_term(entry.at("representative").get<std::string>(), table);
        for (const auto& member : entry.at("members"))
            cls.members.push_back(intern_term(member.get<std::string>(), table));
        classes.push_back(std::move(cls));
    }
    return classes;
}

}  // namespace

std::vector<CoordClass> import_classes_json(const std::string& text, TermTable& table) {
    try {
        ordered_json doc = ordered_json::parse(text);
        return classes_from_json(doc.at("classes"), table);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed classes document: ") + e.what());
    }
}

SpecGraph import_spec_graph_json(const std::string& text, TermTable& table) {
    try {
        ordered_json doc = ordered_json::parse(text);
        SpecGraph graph;
        graph.classes = classes_from_json(doc.at("classes"), table);
        for (const auto& entry : doc.at("edges")) {
            SpecEdge edge;
            edge.from = entry.at("from").get<int>();
            edge.to = entry.at("to").get<int>();
            for (const auto& witness : entry.at("witnesses")) {
                AcquisitionLink link;
                link.source = intern_term(witness.at("source").get<std::string>(), table);
                link.candidate = intern_term(witness.at("candidate").get<std::string>(), table);
                link.family = family_from_name(witness.at("family").get<std::string>());
                link.meta_rule = witness.at("rule").get<std::string>();
                link.sentence_id = witness.at("sentence").get<int>();
                link.start = witness.at("start").get<int>();
                link.end = witness.at("end").get<int>();
                link.cycle = witness.at("cycle").get<int>();
                edge.witnesses.push_back(std::move(link));
            }
            graph.edges.push_back(std::move(edge));
        }
        return graph;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed graph document: ") + e.what());
    }
}

}  // namespace termnet
