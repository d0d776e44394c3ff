#include "uirepro/errors.hpp"
#include "uirepro/evaluate/evaluator.hpp"
#include "uirepro/llm/mock_backend.hpp"

#include <doctest.h>

#include <memory>
#include <string>
#include <vector>

using namespace uirepro;

namespace {

Transition step(const std::string& summary, bool crashed = false) {
    Transition transition;
    transition.action = UIAction::rotate();
    transition.action_rendered = "rotate the screen";
    transition.summary = summary;
    transition.crashed = crashed;
    if (crashed) {
        transition.crash_record = "java.lang.RuntimeException: fell over";
    } else {
        UIState after;
        after.activity_name = "A";
        after.visual_descriptor = summary;
        transition.after = after;
    }
    return transition;
}

ExplorationPath path_of(uint64_t id, const std::vector<std::string>& summaries,
                        bool crashed_last = false) {
    ExplorationPath path;
    path.path_id = id;
    for (size_t i = 0; i < summaries.size(); ++i) {
        path.transitions.push_back(
            step(summaries[i], crashed_last && i + 1 == summaries.size()));
    }
    return path;
}

ReproductionSpecification spec_of(bool expects_crash) {
    ReproductionSpecification spec;
    spec.steps = {"Do the thing"};
    spec.symptoms = {"the thing misbehaves"};
    spec.expects_crash = expects_crash;
    return spec;
}

MockRule rule_of(PromptRole role, std::string match, std::string respond) {
    MockRule rule;
    rule.role = role;
    rule.match = std::move(match);
    rule.respond = std::move(respond);
    return rule;
}

LlmGateway scripted(std::vector<MockRule> rules) {
    return LlmGateway(std::make_unique<MockBackend>(std::move(rules)));
}

LlmGateway eval_gateway(const std::string& reply) {
    return scripted({rule_of(PromptRole::PathEvaluation, "", reply)});
}

} // namespace

TEST_CASE("verdicts address paths by index") {
    std::vector<ExplorationPath> paths = {path_of(10, {"went left"}),
                                          path_of(11, {"went right"}),
                                          path_of(12, {"stood still"})};
    LlmGateway gateway = eval_gateway(R"({"verdicts": [
        {"path": 1, "decision": "candidate_success"},
        {"path": 0, "decision": "continue"}
    ], "default": "prune"})");
    std::vector<PathVerdict> verdicts = evaluate_paths(paths, spec_of(false), gateway, 3);
    REQUIRE(verdicts.size() == 3);
    CHECK(verdicts[0].decision == PathDecision::Continue);
    CHECK(verdicts[1].decision == PathDecision::CandidateSuccess);
    CHECK(verdicts[2].decision == PathDecision::Prune); // unmatched -> default
    CHECK(verdicts[0].path_id == 10);
    CHECK(verdicts[2].rationale == "no verdict addressed this path; applied the default");
}

TEST_CASE("verdicts address paths by summary substring, first match wins") {
    std::vector<ExplorationPath> paths = {path_of(0, {"opened the gallery", "saw a photo"}),
                                          path_of(1, {"opened the settings"})};
    LlmGateway gateway = eval_gateway(R"({"verdicts": [
        {"match": "saw a photo", "decision": "candidate_success"},
        {"match": "opened the", "decision": "prune"}
    ], "default": "continue"})");
    std::vector<PathVerdict> verdicts = evaluate_paths(paths, spec_of(false), gateway, 3);
    CHECK(verdicts[0].decision == PathDecision::CandidateSuccess); // earlier directive wins
    CHECK(verdicts[1].decision == PathDecision::Prune);
    CHECK(verdicts[0].rationale == "evaluation matched: saw a photo");
}

TEST_CASE("the default decision is prune when the reply omits it") {
    std::vector<ExplorationPath> paths = {path_of(0, {"a"}), path_of(1, {"b"})};
    LlmGateway gateway = eval_gateway(R"({"verdicts": [
        {"path": 0, "decision": "continue"}
    ]})");
    std::vector<PathVerdict> verdicts = evaluate_paths(paths, spec_of(false), gateway, 3);
    CHECK(verdicts[0].decision == PathDecision::Continue);
    CHECK(verdicts[1].decision == PathDecision::Prune);
}

TEST_CASE("continue-all keeps every path alive within the beam") {
    std::vector<ExplorationPath> paths = {path_of(0, {"a"}), path_of(1, {"b"}),
                                          path_of(2, {"c"})};
    LlmGateway gateway = eval_gateway(R"({"continue": "all"})");
    std::vector<PathVerdict> verdicts = evaluate_paths(paths, spec_of(false), gateway, 3);
    for (const PathVerdict& verdict : verdicts) {
        CHECK(verdict.decision == PathDecision::Continue);
    }
}

TEST_CASE("the beam clamps Continue verdicts by rank, ties by path id") {
    std::vector<ExplorationPath> paths = {path_of(100, {"a"}), path_of(101, {"b"}),
                                          path_of(102, {"c"}), path_of(103, {"d"}),
                                          path_of(104, {"e"})};
    // continue-all ranks by input position, so the beam keeps the first 3.
    LlmGateway gateway = eval_gateway(R"({"continue": "all"})");
    std::vector<PathVerdict> verdicts = evaluate_paths(paths, spec_of(false), gateway, 3);
    CHECK(verdicts[0].decision == PathDecision::Continue);
    CHECK(verdicts[1].decision == PathDecision::Continue);
    CHECK(verdicts[2].decision == PathDecision::Continue);
    CHECK(verdicts[3].decision == PathDecision::Prune);
    CHECK(verdicts[4].decision == PathDecision::Prune);
    CHECK(verdicts[3].rationale == "outside the beam of 3");

    // Explicit ranks override listing order: the two worst-ranked lose.
    LlmGateway ranked = eval_gateway(R"({"verdicts": [
        {"path": 0, "decision": "continue", "rank": 9},
        {"path": 1, "decision": "continue", "rank": 1},
        {"path": 2, "decision": "continue", "rank": 9},
        {"path": 3, "decision": "continue", "rank": 0},
        {"path": 4, "decision": "continue", "rank": 2}
    ]})");
    std::vector<PathVerdict> ranked_verdicts = evaluate_paths(paths, spec_of(false), ranked, 3);
    CHECK(ranked_verdicts[3].decision == PathDecision::Continue); // rank 0
    CHECK(ranked_verdicts[1].decision == PathDecision::Continue); // rank 1
    CHECK(ranked_verdicts[4].decision == PathDecision::Continue); // rank 2
    // ranks tie at 9: lower path_id (100) would win a remaining slot, but
    // all three slots are taken, so both are pruned.
    CHECK(ranked_verdicts[0].decision == PathDecision::Prune);
    CHECK(ranked_verdicts[2].decision == PathDecision::Prune);

    // Tie-break check: beam 4 leaves one slot for the rank-9 pair.
    std::vector<PathVerdict> beam4 = evaluate_paths(paths, spec_of(false), ranked, 4);
    CHECK(beam4[0].decision == PathDecision::Continue); // path_id 100 beats 102
    CHECK(beam4[2].decision == PathDecision::Prune);
}

TEST_CASE("prune and candidate verdicts are never clamped") {
    std::vector<ExplorationPath> paths = {path_of(0, {"a"}), path_of(1, {"b"}),
                                          path_of(2, {"c"})};
    LlmGateway gateway = eval_gateway(R"({"verdicts": [
        {"path": 0, "decision": "candidate_success"},
        {"path": 1, "decision": "candidate_success"},
        {"path": 2, "decision": "candidate_success"}
    ]})");
    std::vector<PathVerdict> verdicts = evaluate_paths(paths, spec_of(false), gateway, 1);
    for (const PathVerdict& verdict : verdicts) {
        CHECK(verdict.decision == PathDecision::CandidateSuccess);
    }
}

TEST_CASE("an unusable evaluation keeps the longest paths at beam width") {
    std::vector<ExplorationPath> paths = {path_of(0, {"a"}),
                                          path_of(1, {"a", "b", "c"}),
                                          path_of(2, {"a", "b"}),
                                          path_of(3, {"a", "b", "c"})};
    LlmGateway gateway = eval_gateway("the paths all look nice to me");
    std::vector<PathVerdict> verdicts = evaluate_paths(paths, spec_of(false), gateway, 2);
    CHECK(verdicts[1].decision == PathDecision::Continue); // length 3, id 1
    CHECK(verdicts[3].decision == PathDecision::Continue); // length 3, id 3
    CHECK(verdicts[0].decision == PathDecision::Prune);
    CHECK(verdicts[2].decision == PathDecision::Prune);
    // Three malformed attempts were burned before falling back.
    CHECK(gateway.ledger().calls == 3);
}

TEST_CASE("a crashed path is promoted when the bug expects a crash") {
    std::vector<ExplorationPath> paths = {path_of(0, {"tapped"}, /*crashed_last=*/true),
                                          path_of(1, {"tapped"})};
    // Even a continue-all reply cannot hold back the promotion.
    LlmGateway gateway = eval_gateway(R"({"continue": "all"})");
    std::vector<PathVerdict> verdicts = evaluate_paths(paths, spec_of(true), gateway, 3);
    CHECK(verdicts[0].decision == PathDecision::CandidateSuccess);
    CHECK(verdicts[0].rationale == "a crash was observed and the bug expects one");
    CHECK(verdicts[1].decision == PathDecision::Continue);
}

TEST_CASE("a crashed path cannot continue when no crash is expected") {
    std::vector<ExplorationPath> paths = {path_of(0, {"tapped"}, /*crashed_last=*/true)};
    LlmGateway gateway = eval_gateway(R"({"continue": "all"})");
    std::vector<PathVerdict> verdicts = evaluate_paths(paths, spec_of(false), gateway, 3);
    CHECK(verdicts[0].decision == PathDecision::Prune);
    CHECK(verdicts[0].rationale == "the path ended in a crash and cannot be extended");

    // An explicit prune (or candidate) verdict is left alone.
    LlmGateway candid = eval_gateway(R"({"verdicts": [
        {"path": 0, "decision": "candidate_success"}
    ]})");
    std::vector<PathVerdict> kept = evaluate_paths(paths, spec_of(false), candid, 3);
    CHECK(kept[0].decision == PathDecision::CandidateSuccess);
}

TEST_CASE("a beam below one is a caller error") {
    std::vector<ExplorationPath> paths = {path_of(0, {"a"})};
    LlmGateway gateway = eval_gateway(R"({"continue": "all"})");
    CHECK_THROWS_AS(evaluate_paths(paths, spec_of(false), gateway, 0), Error);
}

TEST_CASE("malformed evaluation replies are re-asked before falling back") {
    std::vector<ExplorationPath> paths = {path_of(0, {"walked"})};
    LlmGateway gateway = scripted({
        rule_of(PromptRole::PathEvaluation, "could not be used",
                R"({"verdicts": [{"path": 0, "decision": "candidate_success"}]})"),
        rule_of(PromptRole::PathEvaluation, "", R"({"verdicts": "all of them"})"),
    });
    std::vector<PathVerdict> verdicts = evaluate_paths(paths, spec_of(false), gateway, 3);
    CHECK(verdicts[0].decision == PathDecision::CandidateSuccess);
    CHECK(gateway.ledger().calls == 2);
}

TEST_CASE("crash bugs verify against the crash log alone") {
    ExplorationPath path = path_of(0, {"poked the app"}, /*crashed_last=*/true);
    // A backend claiming "confirmed" must never be consulted for crash bugs.
    LlmGateway liar = scripted({rule_of(PromptRole::BugVerification, "",
                                        R"({"confirmed": true, "explanation": "trust me"})")});

    VerificationResult with_log =
        verify_bug(path, spec_of(true), "java.lang.RuntimeException: fell over", liar);
    CHECK(with_log.confirmed);
    CHECK(with_log.evidence == "crash log captured: java.lang.RuntimeException: fell over");
    CHECK(liar.ledger().calls == 0);

    VerificationResult without_log = verify_bug(path, spec_of(true), std::nullopt, liar);
    CHECK_FALSE(without_log.confirmed);
    CHECK(without_log.evidence == "the bug expects a crash but no crash log was captured");
    CHECK(liar.ledger().calls == 0);

    VerificationResult empty_log = verify_bug(path, spec_of(true), std::string(), liar);
    CHECK_FALSE(empty_log.confirmed);
}

TEST_CASE("a crashed path never confirms a non-crash bug") {
    ExplorationPath path = path_of(0, {"poked the app"}, /*crashed_last=*/true);
    LlmGateway liar = scripted({rule_of(PromptRole::BugVerification, "",
                                        R"({"confirmed": true, "explanation": "sure"})")});
    VerificationResult result =
        verify_bug(path, spec_of(false), "java.lang.RuntimeException: fell over", liar);
    CHECK_FALSE(result.confirmed);
    CHECK(result.evidence == "the app crashed, but the report does not describe a crash");
    CHECK(liar.ledger().calls == 0);
}

TEST_CASE("non-crash bugs are judged by the verification model") {
    ExplorationPath path = path_of(0, {"opened stats", "the counter shows zero"});
    LlmGateway confirming = scripted(
        {rule_of(PromptRole::BugVerification, "the counter shows zero",
                 R"({"confirmed": true, "explanation": "the zero counter is visible"})")});
    VerificationResult yes = verify_bug(path, spec_of(false), std::nullopt, confirming);
    CHECK(yes.confirmed);
    CHECK(yes.evidence == "the zero counter is visible");
    CHECK(confirming.ledger().calls == 1);

    LlmGateway denying = scripted({rule_of(PromptRole::BugVerification, "",
                                           R"({"confirmed": false, "explanation": "looks fine"})")});
    VerificationResult no = verify_bug(path, spec_of(false), std::nullopt, denying);
    CHECK_FALSE(no.confirmed);
    CHECK(no.evidence == "looks fine");
}

TEST_CASE("unusable verification output counts as not confirmed") {
    ExplorationPath path = path_of(0, {"did something"});
    LlmGateway rambling = scripted({rule_of(PromptRole::BugVerification, "", "definitely yes!")});
    VerificationResult result = verify_bug(path, spec_of(false), std::nullopt, rambling);
    CHECK_FALSE(result.confirmed);
    CHECK(result.evidence.rfind("verification output unusable:", 0) == 0);
    CHECK(rambling.ledger().calls == 3); // re-asked to the attempt limit
}

TEST_CASE("an empty path has no final screen to verify") {
    ExplorationPath path;
    LlmGateway gateway = scripted({});
    VerificationResult result = verify_bug(path, spec_of(false), std::nullopt, gateway);
    CHECK_FALSE(result.confirmed);
    CHECK(result.evidence == "no final screen available to verify against");
    CHECK(gateway.ledger().calls == 0);
}
