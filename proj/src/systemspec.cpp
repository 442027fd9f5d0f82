#include "epco/systemspec.hpp"

#include <sstream>

namespace epco {

namespace {

std::vector<std::string> split_top_level(const std::string& inner) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : inner) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

} // namespace

GroupPtr group_from_description(const std::string& text) {
    if (text == "integers") return Group::integers();
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string head = text.substr(0, colon);
        long n = std::stol(text.substr(colon + 1));
        if (head == "cyclic") return Group::cyclic(n);
        if (head == "permutation" || head == "symmetric")
            return Group::symmetric(static_cast<int>(n));
        fail("unknown group kind '" + head + "'");
    }
    if (text.rfind("product(", 0) == 0 && text.back() == ')') {
        std::vector<GroupPtr> factors;
        for (const auto& part : split_top_level(text.substr(8, text.size() - 9)))
            factors.push_back(group_from_description(part));
        return Group::product(std::move(factors));
    }
    fail("cannot parse group description '" + text + "'");
}

namespace {

GraphPtr graph_from_toml(const TomlTable& g) {
    auto vertex_names = g.at("vertices").as_string_array();
    std::map<std::string, int> vindex;
    for (size_t i = 0; i < vertex_names.size(); ++i)
        vindex[vertex_names[i]] = static_cast<int>(i);

    std::vector<Graph::Edge> edges;
    auto it = g.table_arrays.find("edges");
    if (it != g.table_arrays.end())
        for (const auto& e : it->second) {
            auto r = vindex.find(e.at("range").as_string());
            auto s = vindex.find(e.at("source").as_string());
            require(r != vindex.end(), "unknown range vertex in edge");
            require(s != vindex.end(), "unknown source vertex in edge");
            edges.push_back({e.at("name").as_string(), r->second, s->second});
        }
    return Graph::make(std::move(vertex_names), std::move(edges));
}

std::vector<std::vector<int>> image_rows(const TomlValue& v, int set_size,
                                         const std::string& what) {
    std::vector<std::vector<int>> rows;
    for (const auto& row : v.as_array()) {
        auto imgs = row.as_int_array();
        require(static_cast<int>(imgs.size()) == set_size,
                what + " image row has wrong length");
        std::vector<int> r;
        for (long x : imgs) {
            require(x >= 0 && x < set_size, what + " image out of range");
            r.push_back(static_cast<int>(x));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

SetAction action_from_rows(const GroupPtr& group, int set_size,
                           const std::vector<GroupElement>& elements,
                           const std::vector<std::vector<int>>& rows) {
    if (group->finite()) {
        require(rows.size() == elements.size(), "need one image row per group element");
        std::map<GroupElement, const std::vector<int>*> table;
        for (size_t i = 0; i < elements.size(); ++i) table[elements[i]] = &rows[i];
        require(static_cast<long>(table.size()) == group->order(),
                "[action].elements must enumerate the whole group");
        return SetAction::from_table(group, set_size, [table](const GroupElement& g, int x) {
            return (*table.at(g))[x];
        });
    }
    require(rows.size() == group->generators().size(),
            "need one image row per group generator");
    return SetAction::free_abelian(group, set_size, rows);
}

System system_from_sections(const TomlTable& root) {
    auto group = group_from_description(root.table("group").at("kind").as_string());
    auto graph = graph_from_toml(root.table("graph"));

    const auto& action = root.table("action");
    std::vector<GroupElement> elements;
    if (action.has("elements"))
        for (const auto& s : action.at("elements").as_string_array())
            elements.push_back(group->parse(s));
    if (group->finite())
        require(!elements.empty(), "[action] needs an elements list for finite groups");

    auto vrows = image_rows(action.at("vertices"), graph->vertex_count(), "vertex");
    auto erows = image_rows(action.at("edges"), graph->edge_count(), "edge");
    SetAction on_vertices = action_from_rows(group, graph->vertex_count(), elements, vrows);
    SetAction on_edges = action_from_rows(group, graph->edge_count(), elements, erows);
    GraphAction ga(graph, on_vertices, on_edges);

    const auto& coc = root.table("cocycle");
    auto target = group_from_description(coc.at("target").as_string());
    Cocycle phi = [&] {
        if (group->finite()) {
            const auto& table = coc.at("table").as_array();
            require(table.size() == elements.size(),
                    "[cocycle].table needs one row per [action] element");
            std::map<GroupElement, std::vector<GroupElement>> rows;
            for (size_t i = 0; i < elements.size(); ++i) {
                std::vector<GroupElement> row;
                for (const auto& cell : table[i].as_string_array())
                    row.push_back(target->parse(cell));
                require(static_cast<int>(row.size()) == graph->edge_count(),
                        "[cocycle].table row has wrong length");
                rows[elements[i]] = std::move(row);
            }
            return Cocycle::from_table(on_edges, target,
                                       [rows](const GroupElement& g, int x) {
                                           return rows.at(g)[x];
                                       });
        }
        std::vector<std::vector<GroupElement>> xi;
        for (const auto& row : coc.at("xi").as_array()) {
            std::vector<GroupElement> r;
            for (const auto& cell : row.as_string_array()) r.push_back(target->parse(cell));
            require(static_cast<int>(r.size()) == graph->edge_count(),
                    "[cocycle].xi row has wrong length");
            xi.push_back(std::move(r));
        }
        return Cocycle::generating(on_edges, target, std::move(xi));
    }();

    // Schema-level construction only: the cocycle laws are checked by the
    // validate command, which can then report the violations.
    return {std::move(ga), std::move(phi)};
}

} // namespace

LoadedSystem load_system_toml(const std::string& text) {
    TomlTable root = toml_parse(text);
    require(root.has("schema_version") && root.at("schema_version").as_int() == 1,
            "missing or unsupported schema_version (expected 1)");

    if (root.tables.count("construct")) {
        const auto& c = root.table("construct");
        std::string builder = c.at("builder").as_string();
        if (builder == "epk") {
            long a = c.at("a").as_int();
            long b = c.at("b").as_int();
            return {epk_system(a, b), epk_params(a, b)};
        }
        fail("unknown builder '" + builder + "' (supported: epk)");
    }
    return {system_from_sections(root), std::nullopt};
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string system_to_toml(const System& sys) {
    const auto& graph = sys.graph();
    const auto& group = sys.group();
    std::ostringstream os;
    os << "schema_version = 1\n\n";
    os << "[group]\nkind = " << quote(group->describe()) << "\n\n";
    os << "[graph]\nvertices = [";
    for (int v = 0; v < graph->vertex_count(); ++v)
        os << (v ? ", " : "") << quote(graph->vertex_name(v));
    os << "]\n";
    for (int e = 0; e < graph->edge_count(); ++e)
        os << "\n[[graph.edges]]\nname = " << quote(graph->edge_name(e))
           << "\nrange = " << quote(graph->vertex_name(graph->range(e)))
           << "\nsource = " << quote(graph->vertex_name(graph->source(e))) << "\n";

    std::vector<GroupElement> acting =
        group->finite() ? group->elements() : group->generators();
    os << "\n[action]\n";
    if (group->finite()) {
        os << "elements = [";
        for (size_t i = 0; i < acting.size(); ++i)
            os << (i ? ", " : "") << quote(acting[i].str());
        os << "]\n";
    }
    auto emit_rows = [&](const std::string& key, int n, bool vertices) {
        os << key << " = [";
        for (size_t i = 0; i < acting.size(); ++i) {
            os << (i ? ", [" : "[");
            for (int x = 0; x < n; ++x)
                os << (x ? ", " : "")
                   << (vertices ? sys.action.act_vertex(acting[i], x)
                                : sys.action.act_edge(acting[i], x));
            os << "]";
        }
        os << "]\n";
    };
    emit_rows("vertices", graph->vertex_count(), true);
    emit_rows("edges", graph->edge_count(), false);

    os << "\n[cocycle]\ntarget = " << quote(sys.phi.target()->describe()) << "\n";
    os << (group->finite() ? "table" : "xi") << " = [";
    for (size_t i = 0; i < acting.size(); ++i) {
        os << (i ? ", [" : "[");
        for (int e = 0; e < graph->edge_count(); ++e)
            os << (e ? ", " : "") << quote(sys.phi.evaluate(acting[i], e).str());
        os << "]";
    }
    os << "]\n";
    return os.str();
}

} // namespace epco
