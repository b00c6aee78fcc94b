#include "lsr/schedule.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lsr/errors.hpp"

namespace lsr {

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::BFS: return "bfs";
        case Algorithm::LA_BFS: return "la-bfs";
        case Algorithm::BFS3D: return "bfs3d";
        case Algorithm::DIJKSTRA3D: return "dijkstra3d";
        case Algorithm::PROJ: return "proj";
        case Algorithm::LA_PROJ: return "la-proj";
    }
    return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "bfs") return Algorithm::BFS;
    if (s == "la-bfs") return Algorithm::LA_BFS;
    if (s == "bfs3d") return Algorithm::BFS3D;
    if (s == "dijkstra3d") return Algorithm::DIJKSTRA3D;
    if (s == "proj") return Algorithm::PROJ;
    if (s == "la-proj") return Algorithm::LA_PROJ;
    throw DomainError("unknown algorithm: " + s);
}

std::string schedule_to_json(const Schedule& s) {
    nlohmann::ordered_json j;
    j["algorithm"] = to_string(s.algorithm);
    j["kink_condition"] = s.kink_condition;
    j["plane"] = {{"plane_size", s.plane_size}, {"factories", s.factories}, {"layout", "even-even"}};
    j["total_beats"] = s.total_beats;
    nlohmann::ordered_json paths = nlohmann::ordered_json::array();
    for (const auto& r : s.routed) {
        nlohmann::ordered_json e;
        e["i"] = r.instr_index;
        nlohmann::ordered_json vox = nlohmann::ordered_json::array();
        for (const auto& v : r.path.voxels) vox.push_back({v.cell.x, v.cell.y, v.t});
        e["voxels"] = std::move(vox);
        e["kinks"] = r.kinks;
        e["adjusted"] = r.adjusted;
        if (r.tree) e["tree"] = true;
        paths.push_back(std::move(e));
    }
    j["paths"] = std::move(paths);
    return j.dump();
}

Schedule schedule_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid schedule JSON: ") + e.what());
    }
    Schedule s;
    s.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    s.kink_condition = j.value("kink_condition", false);
    s.plane_size = j.at("plane").at("plane_size").get<int>();
    s.factories = j.at("plane").value("factories", 0);
    s.total_beats = j.at("total_beats").get<int>();
    for (const auto& e : j.at("paths")) {
        RoutedInstruction r;
        r.instr_index = e.at("i").get<int>();
        for (const auto& v : e.at("voxels"))
            r.path.voxels.push_back({{v.at(0).get<int>(), v.at(1).get<int>()}, v.at(2).get<int>()});
        r.kinks = e.value("kinks", 0);
        r.adjusted = e.value("adjusted", false);
        r.tree = e.value("tree", false);
        s.routed.push_back(std::move(r));
    }
    return s;
}

void write_schedule_file(const Schedule& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    out << schedule_to_json(s) << '\n';
}

Schedule read_schedule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return schedule_from_json(ss.str());
}

}  // namespace lsr
