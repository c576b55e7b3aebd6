#include "pnav/artifacts.hpp"

#include <sstream>

namespace pnav {

namespace {
char passage_char(int id) {
    const int v = ((id % 36) + 36) % 36;
    return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
}
}  // namespace

std::string serialize_grid(const PassageGrid& grid) {
    std::ostringstream out;
    for (int j = grid.ny() - 1; j >= 0; --j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const CellIndex c{i, j};
            switch (grid.label(c)) {
                case CellLabel::Unlabeled: out << '.'; break;
                case CellLabel::Obstructed: out << '#'; break;
                case CellLabel::Passage: out << passage_char(grid.passage_id(c)); break;
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string serialize_network(const PassageNetwork& network) {
    std::ostringstream out;
    for (const auto& [v, neighbors] : network.adjacency()) {
        for (const CellIndex& n : neighbors) {
            if (v < n) out << "edge " << v.i << " " << v.j << " " << n.i << " " << n.j << "\n";
        }
    }
    return out.str();
}

std::string serialize_decision_log(const std::vector<DecisionRecord>& log) {
    std::ostringstream out;
    char buf[160];
    for (const DecisionRecord& d : log) {
        std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f %c %.6f %.6f %d\n", d.pose.pos.x,
                      d.pose.pos.y, d.pose.theta, d.action.kind == ActionKind::Forward ? 'F' : 'R',
                      d.action.magnitude, d.traveled, d.truncated ? 1 : 0);
        out << buf;
    }
    return out.str();
}

std::vector<DecisionRecord> load_decision_log(const std::string& text) {
    std::vector<DecisionRecord> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        DecisionRecord d;
        char kind;
        int trunc;
        if (!(ls >> d.pose.pos.x >> d.pose.pos.y >> d.pose.theta >> kind >> d.action.magnitude >>
              d.traveled >> trunc)) {
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            throw ParseError("line " + std::to_string(line_no) + ": bad decision record");
        }
        d.action.kind = kind == 'F' ? ActionKind::Forward : ActionKind::Rotate;
        d.truncated = trunc != 0;
        out.push_back(d);
    }
    return out;
}

}  // namespace pnav
