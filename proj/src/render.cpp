#include "pnav/render.hpp"

#include <sstream>

namespace pnav {

namespace {
constexpr double kScale = 12.0;  // px per meter
}

std::string render_svg(const World& world, const RenderLayers& layers) {
    const double W = world.width() * kScale;
    const double H = world.height() * kScale;
    auto X = [](double x) { return x * kScale; };
    auto Y = [&](double y) { return H - y * kScale; };  // svg y grows downward

    std::ostringstream out;
    char buf[512];
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.2f %.2f\">\n",
                  W, H, W, H);
    out << buf;
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (layers.grid) {
        const PassageGrid& g = *layers.grid;
        const double cs = g.cell_size() * kScale;
        for (int j = 0; j < g.ny(); ++j) {
            for (int i = 0; i < g.nx(); ++i) {
                const CellLabel l = g.label({i, j});
                if (l == CellLabel::Unlabeled) continue;
                const char* cls = l == CellLabel::Passage ? "passage" : "obstructed";
                const char* fill = l == CellLabel::Passage ? "#7aa7e0" : "#f2b8c6";
                std::snprintf(buf, sizeof(buf),
                              "<rect class=\"%s\" x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" "
                              "height=\"%.2f\" fill=\"%s\"/>\n",
                              cls, X(i * g.cell_size()), Y((j + 1) * g.cell_size()), cs, cs, fill);
                out << buf;
            }
        }
    }

    if (layers.skeleton) {
        for (const auto& [key, e] : layers.skeleton->edges()) {
            const Vec2 a = layers.skeleton->region(e.a).center;
            const Vec2 b = layers.skeleton->region(e.b).center;
            std::snprintf(buf, sizeof(buf),
                          "<line class=\"skeleton-edge\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" "
                          "y2=\"%.2f\" stroke=\"#2a7f3f\" stroke-width=\"1.2\"/>\n",
                          X(a.x), Y(a.y), X(b.x), Y(b.y));
            out << buf;
        }
        for (const Region& r : layers.skeleton->regions()) {
            std::snprintf(buf, sizeof(buf),
                          "<circle class=\"region\" cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" "
                          "fill=\"none\" stroke=\"#2a7f3f\" stroke-width=\"0.8\"/>\n",
                          X(r.center.x), Y(r.center.y), r.radius * kScale);
            out << buf;
        }
    }

    if (layers.trace && layers.trace->size() > 1) {
        out << "<polyline class=\"trace\" fill=\"none\" stroke=\"#d07015\" "
               "stroke-width=\"1.5\" points=\"";
        for (const Vec2& p : *layers.trace) {
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", X(p.x), Y(p.y));
            out << buf;
        }
        out << "\"/>\n";
    }

    if (layers.plan) {
        for (size_t i = 0; i < layers.plan->waypoints.size(); ++i) {
            const Vec2& w = layers.plan->waypoints[i];
            std::snprintf(buf, sizeof(buf),
                          "<circle class=\"waypoint\" cx=\"%.2f\" cy=\"%.2f\" r=\"3\" "
                          "fill=\"#8438b9\"/>\n<text x=\"%.2f\" y=\"%.2f\" font-size=\"8\" "
                          "fill=\"#8438b9\">%zu</text>\n",
                          X(w.x), Y(w.y), X(w.x) + 4, Y(w.y) - 2, i);
            out << buf;
        }
    }

    for (const Segment& s : world.walls()) {
        std::snprintf(buf, sizeof(buf),
                      "<path class=\"wall\" d=\"M %.2f %.2f L %.2f %.2f\" stroke=\"black\" "
                      "stroke-width=\"2\" stroke-linecap=\"round\"/>\n",
                      X(s.a.x), Y(s.a.y), X(s.b.x), Y(s.b.y));
        out << buf;
    }

    out << "</svg>\n";
    return out.str();
}

}  // namespace pnav
