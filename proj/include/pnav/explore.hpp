#pragma once
// Deliberate exploration: keep a candidate list of glimpsed stretches,
// traverse one passage at a time, label the grid, grow the network and
// skeleton, and reposition between candidates over the network.

#include <deque>
#include <optional>
#include <vector>

#include "pnav/config.hpp"
#include "pnav/passage_map.hpp"
#include "pnav/perception.hpp"
#include "pnav/skeleton.hpp"
#include "pnav/world.hpp"

namespace pnav {

struct NoInitialStretchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two stretches are interchangeable for exploration: close together and
/// overlapping along the longer one's axis by at least a third of their
/// average length.
bool similar_stretches(const Stretch& a, const Stretch& b);

enum class CandidateState { Pending, Explored, Rejected };

struct Candidate {
    Stretch stretch;
    Pose start;  // pose where the stretch was detected
    CandidateState state = CandidateState::Pending;
    int passage_id = 0;  // assigned when exploration begins
};

/// Pending queue plus the full history of everything ever considered.
class CandidateList {
public:
    const std::vector<Candidate>& history() const { return history_; }
    Candidate& at(size_t idx) { return history_[idx]; }
    const std::deque<size_t>& pending() const { return pending_; }
    bool pending_empty() const { return pending_.empty(); }

    bool similar_to_any(const Stretch& s) const;

    /// Long stretches (avg length beyond 2d) jump the queue.
    size_t enqueue(Candidate c, double d);
    std::optional<size_t> pop_front();

private:
    std::vector<Candidate> history_;
    std::deque<size_t> pending_;
};

/// The four candidacy gates: longer than wide, novel, over mostly
/// unlabeled ground, and not a room.
bool qualify_candidate(const Stretch& stretch, const PassageGrid& grid,
                       const CandidateList& list, const RoomPassageClassifier& classifier,
                       const FeatureVector& features);

enum class TraverseReason { EndReached, HardTurn, RoomDetected, BudgetExhausted, Stuck };

struct TraversalState {
    int passage_id = 0;
    int decisions = 0;
    std::deque<double> orientation_window;  // headings at previous decisions, capped
    double passage_length = 0.0;
    std::vector<double> width_history;  // per-view lateral reach (left_max + right_max)

    void push_heading(double theta, int cap);
};

/// Termination test, applied in order: end of stretch reached (or nothing
/// ahead), a turn sharper than the window average tolerates, or the space
/// has widened into a room.
std::optional<TraverseReason> should_terminate(const TraversalState& state, const View& view,
                                               const Stretch& stretch, const Config& cfg);

/// Pop candidates until one still covers new ground and stays dissimilar
/// from everything already explored; losers are marked Rejected.
std::optional<size_t> next_candidate(CandidateList& list, const PassageGrid& grid);

struct DecisionRecord {
    Pose pose;  // before the action
    Action action;
    double traveled = 0.0;
    bool truncated = false;
};

struct ExplorationResult {
    PassageGrid grid;
    PassageNetwork network;
    Skeleton skeleton;
    std::vector<Vec2> decisions;  // decision-point positions, in order
    std::vector<DecisionRecord> log;  // every action taken
    double elapsed = 0.0;             // simulated seconds
    double distance = 0.0;            // meters traveled
    int passages = 0;
    Pose final_pose;
};

/// One exploration run over a world; owns all mutable model state.
class ExplorationSession {
public:
    ExplorationSession(const World& world, const Pose& start, const Config& cfg,
                       RoomPassageClassifier classifier);

    /// Scan, then qualify and enqueue every stretch in the view.
    void collect_candidates(const View& view);

    /// Full turn in place, collecting candidates from every scan.
    void initial_rotation();

    /// Walk to within half a meter of the candidate's start and face along
    /// its stretch; false when the start cannot be reached.
    bool goto_candidate_start(size_t idx);

    TraverseReason traverse_passage(size_t idx, int passage_id);

    /// Last-chance repositioning to the farthest labeled cell, plus a
    /// rescan. False when the trip is impossible.
    bool final_reposition();

    bool budget_exhausted() const { return elapsed_ >= cfg_.exploration.time_budget; }

    CandidateList& candidates() { return candidates_; }
    PassageGrid& grid() { return grid_; }
    PassageNetwork& network() { return network_; }
    Skeleton& skeleton() { return skeleton_; }
    const std::vector<Vec2>& decisions() const { return decisions_; }
    const Pose& pose() const { return pose_; }
    double elapsed() const { return elapsed_; }
    double distance_traveled() const { return distance_; }
    int passage_count() const { return passage_counter_; }

    ExplorationResult take_result();

private:
    const World& world_;
    Config cfg_;
    RoomPassageClassifier classifier_;
    Pose pose_;
    PassageGrid grid_;
    PassageNetwork network_;
    Skeleton skeleton_;
    CandidateList candidates_;
    std::vector<Vec2> decisions_;
    std::vector<DecisionRecord> log_;
    double elapsed_ = 0.0;
    double distance_ = 0.0;
    int passage_counter_ = 0;

    View observe(std::optional<int> passage_id);
    void charge(const Action& a, double traveled);
    StepOutcome step(const Action& a);
    void travel_chain_edges(const Vec2& from, const Vec2& to);
    bool follow_waypoints(const std::vector<Vec2>& waypoints, const Vec2& goal,
                          double stop_within);
    bool approach(const Vec2& target, double stop_within);
    bool face(double direction);
};

ExplorationResult explore(const World& world, const Pose& start, const Config& cfg,
                          const RoomPassageClassifier& classifier);

}  // namespace pnav
