#pragma once
// Per-decision view features, stretch detection, and the room/passage
// classifier (k-means labeling + a two-rule decision stump pair).

#include <cstdint>
#include <string>
#include <vector>

#include "pnav/config.hpp"
#include "pnav/world.hpp"

namespace pnav {

struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FeatureVector {
    double front_avg = 0, front_max = 0, front_min = 0;
    double left_avg = 0, left_max = 0;
    double right_avg = 0, right_max = 0;
    double all_avg = 0, all_max = 0, all_min = 0, all_median = 0, all_std = 0;
};

/// Field accessors by name, in a fixed order usable for training.
const std::vector<std::string>& feature_field_names();
double feature_field(const FeatureVector& f, int index);

FeatureVector compute_features(const View& view, const PerceptionConfig& cfg = {});

/// A long, thin, unobstructed extent seen in one view.
struct Stretch {
    Vec2 origin;          // detection position (== detected_at.pos)
    double direction = 0; // absolute radians
    double length = 0;    // free extent along direction
    double width = 0;     // estimated lateral free space
    double avg_length = 0;// mean range over the run's rays
    Pose detected_at;

    Vec2 end() const { return origin + unit_from_angle(direction) * length; }
    Vec2 midpoint() const { return origin + unit_from_angle(direction) * (length / 2.0); }
    Segment axis() const { return {origin, end()}; }
};

/// Stretches of length >= d in the view, longest first.
std::vector<Stretch> detect_stretches(const View& view, double d,
                                      const PerceptionConfig& cfg = {});

enum class ViewLabel { Room, Passage };

struct ClassifierRule {
    int field = 0;        // index into feature_field_names()
    bool less_than = true;// true: fires when value < threshold; false: >=
    double threshold = 0;
    ViewLabel label = ViewLabel::Room;
};

/// Ordered first-match rules (at most two) with a default label.
struct RoomPassageClassifier {
    std::vector<ClassifierRule> rules;
    ViewLabel default_label = ViewLabel::Passage;
};

ViewLabel classify(const RoomPassageClassifier& c, const FeatureVector& f);

/// Hand-set fallback used until a trained classifier replaces it:
/// front_max < 1.5*d and all_std < 3 reads as a room.
RoomPassageClassifier default_classifier(double d);

/// Cluster the samples into two groups, label the tighter-front group as
/// rooms, fit a depth-2 tree, and keep its top two single-field rules.
RoomPassageClassifier train_classifier(const std::vector<FeatureVector>& samples,
                                       const PerceptionConfig& cfg = {});

std::string serialize_classifier(const RoomPassageClassifier& c);
RoomPassageClassifier load_classifier(const std::string& text);

}  // namespace pnav
