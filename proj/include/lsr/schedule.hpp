#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lsr/path.hpp"

namespace lsr {

enum class Algorithm : uint8_t { BFS, LA_BFS, BFS3D, DIJKSTRA3D, PROJ, LA_PROJ };

const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct RoutedInstruction {
    int instr_index = 0;
    Path3D path;          // 2D methods store their flat lift at the beat
    int kinks = 0;
    bool adjusted = false;  // kink fix applied
    bool tree = false;      // many-body routing tree instead of a path

    bool operator==(const RoutedInstruction&) const = default;
};

struct ScheduleOptions {
    bool kink_condition = true;
    bool look_ahead = false;
};

struct Schedule {
    Algorithm algorithm = Algorithm::BFS;
    bool kink_condition = false;
    int plane_size = 0;
    int factories = 0;
    int total_beats = 0;
    std::vector<RoutedInstruction> routed;  // one per instruction, in instruction order

    bool operator==(const Schedule&) const = default;
};

std::string schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const std::string& text);
void write_schedule_file(const Schedule& s, const std::string& path);
Schedule read_schedule_file(const std::string& path);

}  // namespace lsr
