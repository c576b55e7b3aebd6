#include "pnav/perception.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace pnav {

namespace {

struct Stats {
    double avg = 0, mx = 0, mn = 0;
};

Stats sector_stats(const std::vector<double>& vals) {
    Stats s;
    if (vals.empty()) return s;
    s.mx = -std::numeric_limits<double>::infinity();
    s.mn = std::numeric_limits<double>::infinity();
    double sum = 0;
    for (double v : vals) {
        sum += v;
        s.mx = std::max(s.mx, v);
        s.mn = std::min(s.mn, v);
    }
    s.avg = sum / vals.size();
    return s;
}

}  // namespace

const std::vector<std::string>& feature_field_names() {
    static const std::vector<std::string> names{
        "front_avg", "front_max", "front_min", "left_avg",  "left_max",  "right_avg",
        "right_max", "all_avg",   "all_max",   "all_min",   "all_median", "all_std"};
    return names;
}

double feature_field(const FeatureVector& f, int index) {
    switch (index) {
        case 0: return f.front_avg;
        case 1: return f.front_max;
        case 2: return f.front_min;
        case 3: return f.left_avg;
        case 4: return f.left_max;
        case 5: return f.right_avg;
        case 6: return f.right_max;
        case 7: return f.all_avg;
        case 8: return f.all_max;
        case 9: return f.all_min;
        case 10: return f.all_median;
        case 11: return f.all_std;
        default: throw std::out_of_range("feature index");
    }
}

FeatureVector compute_features(const View& view, const PerceptionConfig& cfg) {
    std::vector<double> front, left, right;
    const double front_half = deg_to_rad(cfg.front_half_angle_deg);
    const double side_min = deg_to_rad(cfg.side_min_deg);
    const double side_max = deg_to_rad(cfg.side_max_deg);
    for (int i = 0; i < view.ray_count(); ++i) {
        const double rel = view.rel_angle(i);
        const double r = view.ranges[i];
        if (std::abs(rel) <= front_half) front.push_back(r);
        if (rel >= side_min && rel <= side_max) left.push_back(r);
        if (rel <= -side_min && rel >= -side_max) right.push_back(r);
    }
    const Stats f = sector_stats(front);
    const Stats l = sector_stats(left);
    const Stats r = sector_stats(right);
    const Stats a = sector_stats(view.ranges);

    FeatureVector out;
    out.front_avg = f.avg;
    out.front_max = f.mx;
    out.front_min = f.mn;
    out.left_avg = l.avg;
    out.left_max = l.mx;
    out.right_avg = r.avg;
    out.right_max = r.mx;
    out.all_avg = a.avg;
    out.all_max = a.mx;
    out.all_min = a.mn;

    std::vector<double> sorted = view.ranges;
    std::sort(sorted.begin(), sorted.end());
    out.all_median = sorted.empty() ? 0.0 : sorted[(sorted.size() - 1) / 2];  // lower middle

    double var = 0;
    for (double v : view.ranges) var += (v - a.avg) * (v - a.avg);
    out.all_std = view.ranges.empty() ? 0.0 : std::sqrt(var / view.ranges.size());
    return out;
}

std::vector<Stretch> detect_stretches(const View& view, double d, const PerceptionConfig& cfg) {
    std::vector<Stretch> out;
    const int n = view.ray_count();
    if (n < 2 || d <= 0) return out;
    const double step_deg = view.arc_deg / (n - 1);
    const int min_run = std::max(2, static_cast<int>(std::ceil(cfg.stretch_min_run_deg / step_deg)));
    const int cone = std::max(1, static_cast<int>(std::lround(cfg.stretch_length_cone_deg / step_deg)));

    int i = 0;
    while (i < n) {
        if (view.ranges[i] < d) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && view.ranges[j + 1] >= d) ++j;
        const int count = j - i + 1;
        if (count >= min_run) {
            const int c = (i + j) / 2;
            Stretch s;
            s.detected_at = view.pose;
            s.origin = view.pose.pos;
            s.direction = view.abs_angle(c);

            double len = std::numeric_limits<double>::infinity();
            for (int k = std::max(i, c - cone); k <= std::min(j, c + cone); ++k)
                len = std::min(len, view.ranges[k]);
            s.length = len;

            double sum = 0;
            for (int k = i; k <= j; ++k) sum += view.ranges[k];
            s.avg_length = sum / count;

            // Lateral reach on each side, taken from the first flanking ray
            // shorter than d; open sides count as d.
            const Vec2 dir = unit_from_angle(s.direction);
            auto lateral = [&](int from, int step) {
                for (int k = from; k >= 0 && k < n; k += step) {
                    if (view.ranges[k] < d) {
                        const Vec2 p = view.pose.pos +
                                       unit_from_angle(view.abs_angle(k)) * view.ranges[k];
                        return std::min(d, std::abs(cross(dir, p - s.origin)));
                    }
                }
                return d;
            };
            s.width = lateral(i - 1, -1) + lateral(j + 1, +1);
            out.push_back(s);
        }
        i = j + 1;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Stretch& a, const Stretch& b) { return a.length > b.length; });
    return out;
}

ViewLabel classify(const RoomPassageClassifier& c, const FeatureVector& f) {
    for (const ClassifierRule& r : c.rules) {
        const double v = feature_field(f, r.field);
        const bool fires = r.less_than ? (v < r.threshold) : (v >= r.threshold);
        if (fires) return r.label;
    }
    return c.default_label;
}

RoomPassageClassifier default_classifier(double d) {
    // front_max < 1.5*d and all_std < 3 => Room, else Passage.
    RoomPassageClassifier c;
    c.rules.push_back({1 /*front_max*/, false, 1.5 * d, ViewLabel::Passage});
    c.rules.push_back({11 /*all_std*/, false, 3.0, ViewLabel::Passage});
    c.default_label = ViewLabel::Room;
    return c;
}

namespace {

constexpr int kDims = 12;
using Point = std::array<double, kDims>;

Point to_point(const FeatureVector& f) {
    Point p;
    for (int i = 0; i < kDims; ++i) p[i] = feature_field(f, i);
    return p;
}

double sqdist(const Point& a, const Point& b) {
    double s = 0;
    for (int i = 0; i < kDims; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

// Two-means with k-means++ seeding; returns per-sample cluster ids.
std::vector<int> two_means(const std::vector<Point>& pts, std::uint64_t seed, int max_iters) {
    std::mt19937_64 rng(seed);
    const size_t n = pts.size();
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    Point c0 = pts[pick(rng)];

    std::vector<double> d2(n);
    double total = 0;
    for (size_t i = 0; i < n; ++i) {
        d2[i] = sqdist(pts[i], c0);
        total += d2[i];
    }
    Point c1 = c0;
    if (total > 0) {
        std::uniform_real_distribution<double> u(0.0, total);
        double r = u(rng);
        for (size_t i = 0; i < n; ++i) {
            r -= d2[i];
            if (r <= 0 || i + 1 == n) {
                c1 = pts[i];
                break;
            }
        }
    }

    std::vector<int> assign(n, 0);
    for (int it = 0; it < max_iters; ++it) {
        bool changed = false;
        for (size_t i = 0; i < n; ++i) {
            const int a = sqdist(pts[i], c0) <= sqdist(pts[i], c1) ? 0 : 1;
            if (a != assign[i]) {
                assign[i] = a;
                changed = true;
            }
        }
        Point s0{}, s1{};
        size_t n0 = 0, n1 = 0;
        for (size_t i = 0; i < n; ++i) {
            Point& s = assign[i] == 0 ? s0 : s1;
            (assign[i] == 0 ? n0 : n1) += 1;
            for (int k = 0; k < kDims; ++k) s[k] += pts[i][k];
        }
        if (n0 == 0 || n1 == 0) break;
        for (int k = 0; k < kDims; ++k) {
            c0[k] = s0[k] / n0;
            c1[k] = s1[k] / n1;
        }
        if (!changed && it > 0) break;
    }
    return assign;
}

double gini(int room, int passage) {
    const int n = room + passage;
    if (n == 0) return 0.0;
    const double pr = static_cast<double>(room) / n;
    const double pp = static_cast<double>(passage) / n;
    return 1.0 - pr * pr - pp * pp;
}

struct Split {
    int field = -1;
    double threshold = 0;
    double impurity = std::numeric_limits<double>::infinity();
};

// Best single-field threshold split by weighted Gini; ties resolve to the
// lowest field index, then the lowest threshold.
Split best_split(const std::vector<Point>& pts, const std::vector<int>& labels,
                 const std::vector<size_t>& idx) {
    Split best;
    for (int f = 0; f < kDims; ++f) {
        std::vector<std::pair<double, int>> vals;
        vals.reserve(idx.size());
        for (size_t i : idx) vals.emplace_back(pts[i][f], labels[i]);
        std::sort(vals.begin(), vals.end());
        int left_room = 0, left_pass = 0;
        int right_room = 0, right_pass = 0;
        for (const auto& [v, l] : vals) (l == 0 ? right_room : right_pass)++;
        const size_t n = vals.size();
        for (size_t i = 0; i + 1 < n; ++i) {
            (vals[i].second == 0 ? left_room : left_pass)++;
            (vals[i].second == 0 ? right_room : right_pass)--;
            if (vals[i].first == vals[i + 1].first) continue;
            const double thr = (vals[i].first + vals[i + 1].first) / 2.0;
            const size_t nl = i + 1, nr = n - nl;
            const double imp = (nl * gini(left_room, left_pass) +
                                nr * gini(right_room, right_pass)) / n;
            if (imp + 1e-12 < best.impurity) {
                best = {f, thr, imp};
            }
        }
    }
    return best;
}

struct Group {
    std::vector<size_t> idx;
    int room = 0, passage = 0;

    double purity() const {
        const int n = room + passage;
        return n == 0 ? 1.0 : static_cast<double>(std::max(room, passage)) / n;
    }
    ViewLabel majority() const {
        return room >= passage ? ViewLabel::Room : ViewLabel::Passage;
    }
};

Group make_group(const std::vector<int>& labels, std::vector<size_t> idx) {
    Group g;
    g.idx = std::move(idx);
    for (size_t i : g.idx) (labels[i] == 0 ? g.room : g.passage)++;
    return g;
}

}  // namespace

RoomPassageClassifier train_classifier(const std::vector<FeatureVector>& samples,
                                       const PerceptionConfig& cfg) {
    if (samples.size() < 4) throw TrainingError("need at least 4 samples");
    std::vector<Point> pts;
    pts.reserve(samples.size());
    for (const auto& s : samples) pts.push_back(to_point(s));

    bool all_same = true;
    for (size_t i = 1; i < pts.size() && all_same; ++i) all_same = pts[i] == pts[0];
    if (all_same) throw TrainingError("degenerate data: all samples identical");

    const std::vector<int> cluster = two_means(pts, cfg.kmeans_seed, cfg.kmeans_max_iters);

    // The cluster with the shorter mean front reach gets the room label.
    double front_sum[2] = {0, 0};
    int counts[2] = {0, 0};
    for (size_t i = 0; i < pts.size(); ++i) {
        front_sum[cluster[i]] += pts[i][1];  // front_max
        counts[cluster[i]]++;
    }
    if (counts[0] == 0 || counts[1] == 0)
        throw TrainingError("degenerate data: clustering collapsed");
    const int room_cluster = front_sum[0] / counts[0] <= front_sum[1] / counts[1] ? 0 : 1;
    std::vector<int> labels(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        labels[i] = cluster[i] == room_cluster ? 0 : 1;  // 0 = Room, 1 = Passage

    std::vector<size_t> all(pts.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    const Split root = best_split(pts, labels, all);
    if (root.field < 0) throw TrainingError("no split separates the clusters");

    std::vector<size_t> li, ri;
    for (size_t i : all) (pts[i][root.field] < root.threshold ? li : ri).push_back(i);
    Group left = make_group(labels, std::move(li));
    Group right = make_group(labels, std::move(ri));

    // Rule 1 covers the purer side of the root split; rule 2 comes from the
    // refined split of the other side, when one exists.
    const bool left_first = left.purity() >= right.purity();
    const Group& pure = left_first ? left : right;
    Group& other = left_first ? right : left;

    RoomPassageClassifier out;
    out.rules.push_back({root.field, left_first, root.threshold, pure.majority()});

    const Split sub = other.purity() < 1.0 && other.idx.size() >= 2
                          ? best_split(pts, labels, other.idx)
                          : Split{};
    if (sub.field >= 0) {
        std::vector<size_t> sli, sri;
        for (size_t i : other.idx)
            (pts[i][sub.field] < sub.threshold ? sli : sri).push_back(i);
        Group sl = make_group(labels, std::move(sli));
        Group sr = make_group(labels, std::move(sri));
        const bool sub_left = sl.purity() >= sr.purity();
        const Group& sub_pure = sub_left ? sl : sr;
        const Group& sub_rest = sub_left ? sr : sl;
        out.rules.push_back({sub.field, sub_left, sub.threshold, sub_pure.majority()});
        out.default_label = sub_rest.majority();
    } else {
        out.rules.push_back({root.field, !left_first, root.threshold, other.majority()});
        out.default_label = other.majority();
    }
    return out;
}

std::string serialize_classifier(const RoomPassageClassifier& c) {
    std::ostringstream out;
    char buf[128];
    for (const ClassifierRule& r : c.rules) {
        std::snprintf(buf, sizeof(buf), "rule %s %s %.9g %s\n",
                      feature_field_names()[r.field].c_str(), r.less_than ? "lt" : "ge",
                      r.threshold, r.label == ViewLabel::Room ? "room" : "passage");
        out << buf;
    }
    out << "default " << (c.default_label == ViewLabel::Room ? "room" : "passage") << "\n";
    return out.str();
}

RoomPassageClassifier load_classifier(const std::string& text) {
    RoomPassageClassifier c;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_default = false;
    auto parse_label = [&](const std::string& s) {
        if (s == "room") return ViewLabel::Room;
        if (s == "passage") return ViewLabel::Passage;
        throw ParseError("line " + std::to_string(line_no) + ": unknown label '" + s + "'");
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "rule") {
            std::string field, op, label;
            double thr;
            if (!(ls >> field >> op >> thr >> label))
                throw ParseError("line " + std::to_string(line_no) + ": bad rule record");
            const auto& names = feature_field_names();
            const auto it = std::find(names.begin(), names.end(), field);
            if (it == names.end())
                throw ParseError("line " + std::to_string(line_no) + ": unknown field '" + field + "'");
            c.rules.push_back({static_cast<int>(it - names.begin()), op == "lt", thr,
                               parse_label(label)});
        } else if (tag == "default") {
            std::string label;
            if (!(ls >> label))
                throw ParseError("line " + std::to_string(line_no) + ": bad default record");
            c.default_label = parse_label(label);
            have_default = true;
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
        }
    }
    if (!have_default) throw ParseError("classifier missing default label");
    if (c.rules.size() > 2) throw ValidationError("classifier has more than two rules");
    return c;
}

}  // namespace pnav
