#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "support/oracles.hpp"
#include "termnet/conceptnet.hpp"
#include "termnet/errors.hpp"

using namespace termnet;

namespace {

struct LinkBuilder {
    TermTable table;
    std::vector<AcquisitionLink> links;
    int next_sentence = 0;

    TermId intern(const std::string& text) {
        Term term = parse_term(text);
        TermId id = term.id();
        table.emplace(id, std::move(term));
        return id;
    }

    void link(const std::string& source, const std::string& candidate, Family family,
              const std::string& rule) {
        AcquisitionLink l;
        l.source = intern(source);
        l.candidate = intern(candidate);
        l.family = family;
        l.meta_rule = rule;
        l.sentence_id = next_sentence++;
        l.end = 4;
        l.cycle = 1;
        links.push_back(std::move(l));
    }

    void coor(const std::string& s, const std::string& c, const std::string& rule = "coor2_head") {
        link(s, c, Family::Coordination, rule);
    }
    void ins(const std::string& s, const std::string& c) { link(s, c, Family::Insertion, "ins2"); }
};

std::set<std::set<std::string>> as_partition(const std::vector<CoordClass>& classes,
                                             const TermTable& table) {
    std::set<std::set<std::string>> partition;
    for (const CoordClass& cls : classes) {
        std::set<std::string> members;
        for (TermId id : cls.members) members.insert(table.at(id).text());
        partition.insert(std::move(members));
    }
    return partition;
}

}  // namespace

TEST_CASE("coordination chains merge into one class, the rest stay singletons") {
    LinkBuilder b;
    b.coor("aortic arch", "aortic valve");
    b.coor("aortic valve", "mitral valve");
    std::vector<TermId> universe{b.intern("aortic arch"), b.intern("aortic valve"),
                                 b.intern("mitral valve"), b.intern("serum albumin")};

    std::vector<CoordClass> classes = build_coord_classes(b.links, universe, b.table);
    CHECK(as_partition(classes, b.table) ==
          std::set<std::set<std::string>>{{"aortic arch", "aortic valve", "mitral valve"},
                                          {"serum albumin"}});
    // Ids follow the representative order, representatives are the smallest members.
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].id == 0);
    CHECK(b.table.at(classes[0].representative).text() == "aortic arch");
    CHECK(b.table.at(classes[1].representative).text() == "serum albumin");
}

TEST_CASE("an empty link set yields all singletons") {
    LinkBuilder b;
    std::vector<TermId> universe{b.intern("serum albumin"), b.intern("viral hepatitis")};
    std::vector<CoordClass> classes = build_coord_classes({}, universe, b.table);
    CHECK(classes.size() == 2);
    for (const CoordClass& cls : classes) CHECK(cls.members.size() == 1);
}

TEST_CASE("a modifier-control network forms a single class") {
    LinkBuilder b;
    b.coor("normal control", "matched control");
    b.coor("matched control", "age matched control");
    b.coor("normal control", "solvent control");
    b.coor("normal control", "uraemic control");
    b.coor("disease control", "normal control");
    std::vector<TermId> universe;
    std::vector<CoordClass> classes = build_coord_classes(b.links, universe, b.table);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].members.size() == 6);
}

TEST_CASE("classes equal the transitive-closure oracle on random link sets") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 100; ++trial) {
        LinkBuilder b;
        int n_terms = 2 + static_cast<int>(rng() % 49);
        std::vector<std::string> texts;
        std::vector<TermId> universe;
        for (int i = 0; i < n_terms; ++i) {
            std::string text = "term" + std::to_string(i) + " noun";
            texts.push_back(text);
            universe.push_back(b.intern(text));
        }
        int n_links = static_cast<int>(rng() % (2 * n_terms));
        std::vector<std::pair<std::string, std::string>> edges;
        for (int i = 0; i < n_links; ++i) {
            const std::string& s = texts[rng() % texts.size()];
            const std::string& c = texts[rng() % texts.size()];
            if (s == c) continue;
            b.coor(s, c);
            edges.emplace_back(s, c);
        }

        std::vector<CoordClass> classes = build_coord_classes(b.links, universe, b.table);
        CAPTURE(trial);
        CHECK(as_partition(classes, b.table) == testsupport::oracle_partition(texts, edges));

        // Partition laws: pairwise disjoint, covering every universe term.
        std::set<TermId> seen;
        for (const CoordClass& cls : classes)
            for (TermId id : cls.members) CHECK(seen.insert(id).second);
        for (TermId id : universe) CHECK(seen.count(id) == 1);

        // Direction reversal never changes membership.
        std::vector<AcquisitionLink> reversed = b.links;
        for (AcquisitionLink& link : reversed) std::swap(link.source, link.candidate);
        CHECK(as_partition(build_coord_classes(reversed, universe, b.table), b.table) ==
              as_partition(classes, b.table));
    }
}

TEST_CASE("head coordinations can be excluded from classing") {
    LinkBuilder b;
    b.coor("surgical closure", "surgical exploration", "coor2_arg");  // heads coordinated
    b.coor("viral hepatitis", "autoimmune hepatitis", "coor2_head");  // arguments coordinated
    // Terms incident to any link stay in the universe even when their links
    // are excluded, exactly as the graph command passes them.
    std::vector<TermId> universe{b.intern("surgical closure"), b.intern("surgical exploration"),
                                 b.intern("viral hepatitis"), b.intern("autoimmune hepatitis")};

    std::vector<CoordClass> all = build_coord_classes(b.links, universe, b.table);
    CHECK(all.size() == 2);

    ClassingOptions split;
    split.include_head_coordinations = false;
    std::vector<CoordClass> argument_only = build_coord_classes(b.links, universe, b.table, split);
    CHECK(as_partition(argument_only, b.table) ==
          std::set<std::set<std::string>>{{"surgical closure"},
                                          {"surgical exploration"},
                                          {"autoimmune hepatitis", "viral hepatitis"}});
}

TEST_CASE("conflation merges classes after automatic classing") {
    LinkBuilder b;
    b.coor("malignant tumor", "benign tumor");
    b.coor("human tumor", "experimental tumor");
    std::vector<TermId> universe{b.intern("rat tumor")};

    ClassingOptions options;
    options.conflations = {{"rat tumor", "human tumor"}, {"missing tumor", "benign tumor"}};
    std::vector<CoordClass> classes = build_coord_classes(b.links, universe, b.table, options);
    CHECK(as_partition(classes, b.table) ==
          std::set<std::set<std::string>>{{"benign tumor", "malignant tumor"},
                                          {"experimental tumor", "human tumor", "rat tumor"}});
}

TEST_CASE("specialization edges merge witnesses and skip intra-class links") {
    LinkBuilder b;
    b.coor("malignant tumor", "benign tumor");
    b.ins("malignant tumor", "embryonal tumor");
    b.ins("benign tumor", "embryonal tumor");   // same class pair, second witness
    b.ins("malignant tumor", "benign tumor");   // intra-class: dropped
    b.ins("ovarian tumor", "malignant tumor");  // back edge from a singleton

    std::vector<TermId> universe;
    std::vector<CoordClass> classes = build_coord_classes(b.links, universe, b.table);
    SpecGraph graph = build_spec_graph(b.links, classes, b.table);

    // ovarian tumor and embryonal tumor extend the partition as singletons.
    CHECK(graph.classes.size() == 3);
    REQUIRE(graph.edges.size() == 2);

    auto class_rep = [&](int id) { return b.table.at(graph.classes[id].representative).text(); };
    const SpecEdge* down = nullptr;
    const SpecEdge* back = nullptr;
    for (const SpecEdge& edge : graph.edges) {
        if (class_rep(edge.from) == "benign tumor") down = &edge;
        if (class_rep(edge.from) == "ovarian tumor") back = &edge;
    }
    REQUIRE(down != nullptr);
    CHECK(class_rep(down->to) == "embryonal tumor");
    CHECK(down->witnesses.size() == 2);
    REQUIRE(back != nullptr);
    CHECK(class_rep(back->to) == "benign tumor");
    CHECK(back->witnesses.size() == 1);
    for (const SpecEdge& edge : graph.edges) CHECK(edge.from != edge.to);

    // A cycle between classes must survive export.
    std::string dot = export_spec_graph(graph, b.table, ExportFormat::Dot);
    CHECK(dot.find("label=\"2\"") != std::string::npos);
}

TEST_CASE("exports are deterministic and round-trip through JSON") {
    LinkBuilder b;
    b.coor("normal control", "solvent control");
    b.ins("normal control", "young healthy control");
    b.ins("solvent control", "young healthy control");
    std::vector<TermId> universe;
    std::vector<CoordClass> classes = build_coord_classes(b.links, universe, b.table);
    SpecGraph graph = build_spec_graph(b.links, classes, b.table);

    std::string classes_json = export_classes(classes, b.links, b.table, ExportFormat::Json);
    std::string graph_json = export_spec_graph(graph, b.table, ExportFormat::Json);

    // Same structures from a permuted link list.
    std::vector<AcquisitionLink> shuffled = b.links;
    std::reverse(shuffled.begin(), shuffled.end());
    std::vector<CoordClass> classes2 = build_coord_classes(shuffled, universe, b.table);
    SpecGraph graph2 = build_spec_graph(shuffled, classes2, b.table);
    CHECK(export_classes(classes2, shuffled, b.table, ExportFormat::Json) == classes_json);
    CHECK(export_spec_graph(graph2, b.table, ExportFormat::Json) == graph_json);

    TermTable imported_table;
    std::vector<CoordClass> imported = import_classes_json(classes_json, imported_table);
    CHECK(export_classes(imported, b.links, imported_table, ExportFormat::Json) == classes_json);

    TermTable graph_table;
    SpecGraph imported_graph = import_spec_graph_json(graph_json, graph_table);
    CHECK(export_spec_graph(imported_graph, graph_table, ExportFormat::Json) == graph_json);
}

TEST_CASE("single class exports as one cluster without edges") {
    LinkBuilder b;
    b.coor("normal control", "solvent control");
    std::vector<CoordClass> classes = build_coord_classes(b.links, {}, b.table);
    std::string dot = export_classes(classes, b.links, b.table, ExportFormat::Dot);
    CHECK(dot.find("subgraph cluster_0") != std::string::npos);
    CHECK(dot.find("subgraph cluster_1") == std::string::npos);
    CHECK(dot.find("\"normal control\" -> \"solvent control\"") != std::string::npos);

    SpecGraph graph = build_spec_graph({}, classes, b.table);
    std::string spec_dot = export_spec_graph(graph, b.table, ExportFormat::Dot);
    CHECK(spec_dot.find("->") == std::string::npos);
}

TEST_CASE("unknown export formats are rejected") {
    CHECK(export_format_from_name("dot") == ExportFormat::Dot);
    CHECK(export_format_from_name("json") == ExportFormat::Json);
    CHECK_THROWS_AS(export_format_from_name("svg"), DataError);
}

TEST_CASE("conflation files parse and reject malformed lines") {
    std::istringstream good("# note\nrat tumor == human tumor\n\n a b  ==  c d \n");
    auto pairs = load_conflations(good);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == std::pair<std::string, std::string>{"rat tumor", "human tumor"});
    CHECK(pairs[1] == std::pair<std::string, std::string>{"a b", "c d"});

    std::istringstream bad("rat tumor = human tumor\n");
    CHECK_THROWS_AS(load_conflations(bad), ParseError);
}
