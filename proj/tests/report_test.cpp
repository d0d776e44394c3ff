#include "uirepro/errors.hpp"
#include "uirepro/llm/gateway.hpp"
#include "uirepro/llm/mock_backend.hpp"
#include "uirepro/report/analyzer.hpp"
#include "uirepro/report/bug_report.hpp"

#include <doctest.h>

#include <memory>
#include <string>
#include <vector>

using namespace uirepro;

namespace {

LlmGateway scripted_gateway(std::vector<MockRule> rules) {
    return LlmGateway(std::make_unique<MockBackend>(std::move(rules)));
}

MockRule analysis_rule(std::string match, std::string respond) {
    MockRule rule;
    rule.role = PromptRole::ReportAnalysis;
    rule.match = std::move(match);
    rule.respond = std::move(respond);
    return rule;
}

} // namespace

TEST_CASE("a report is a title line, a body and comment blocks") {
    BugReport report = parse_report("App eats my drafts\n"
                                    "\n"
                                    "Open the composer and hit back.\n"
                                    "The draft is gone.\n"
                                    "--- comment ---\n"
                                    "Happens on my phone too.\n"
                                    "--- comment ---\n"
                                    "\n"
                                    "Still broken in 2.1.\n",
                                    "drafts");
    CHECK(report.report_id == "drafts");
    CHECK(report.title == "App eats my drafts");
    CHECK(report.body == "Open the composer and hit back.\nThe draft is gone.");
    REQUIRE(report.comments.size() == 2);
    CHECK(report.comments[0] == "Happens on my phone too.");
    CHECK(report.comments[1] == "Still broken in 2.1.");
}

TEST_CASE("title-only reports and CRLF endings are tolerated") {
    BugReport bare = parse_report("Crash on rotate", "r1");
    CHECK(bare.title == "Crash on rotate");
    CHECK(bare.body.empty());
    CHECK(bare.comments.empty());

    BugReport crlf = parse_report("Title\r\n\r\nBody line\r\n", "r2");
    CHECK(crlf.title == "Title");
    CHECK(crlf.body == "Body line");
}

TEST_CASE("a missing title is rejected") {
    CHECK_THROWS_AS(parse_report("", "empty"), MissingTitleError);
    CHECK_THROWS_AS(parse_report("\nbody without a title", "headless"), MissingTitleError);
    CHECK_THROWS_AS(parse_report("   \nbody", "blank"), MissingTitleError);
}

TEST_CASE("report rendering numbers the comments") {
    BugReport report;
    report.title = "List scrolls to top";
    report.body = "Scroll down, tap any row.";
    report.comments = {"Same here.", "Reproduced on a tablet."};
    CHECK(render_report(report) == "List scrolls to top\n"
                                   "\n"
                                   "Scroll down, tap any row.\n"
                                   "\n"
                                   "Comments:\n"
                                   "(1) Same here.\n"
                                   "(2) Reproduced on a tablet.");

    BugReport title_only;
    title_only.title = "Short";
    CHECK(render_report(title_only) == "Short");
}

TEST_CASE("specification rendering lists steps, symptoms and crash expectation") {
    ReproductionSpecification spec;
    spec.steps = {"Open the gallery", "Rotate the device"};
    spec.symptoms = {"the app force closes"};
    spec.expects_crash = true;
    CHECK(render_specification(spec) == "Steps to reproduce:\n"
                                        "1. Open the gallery\n"
                                        "2. Rotate the device\n"
                                        "Expected faulty behaviour:\n"
                                        "- the app force closes\n"
                                        "The app is expected to crash.");

    spec.expects_crash = false;
    std::string rendered = render_specification(spec);
    CHECK(rendered.find("The app is not expected to crash.") != std::string::npos);
}

TEST_CASE("the raw-report fallback wraps the report and scans for crash words") {
    BugReport report;
    report.title = "Photos vanish after sync";
    report.body = "All thumbnails disappear.";
    ReproductionSpecification spec = specification_from_raw_report(report);
    REQUIRE(spec.steps.size() == 1);
    CHECK(spec.steps[0] == "Follow the bug report as written: " + render_report(report));
    REQUIRE(spec.symptoms.size() == 1);
    CHECK(spec.symptoms[0] == "the faulty behaviour described in the bug report");
    CHECK_FALSE(spec.expects_crash);

    BugReport upper;
    upper.title = "APP CRASHES ON LAUNCH";
    CHECK(specification_from_raw_report(upper).expects_crash);

    BugReport hyphen;
    hyphen.title = "Force-close when saving";
    CHECK(specification_from_raw_report(hyphen).expects_crash);

    BugReport comment_only;
    comment_only.title = "Weird behaviour";
    comment_only.comments = {"I saw a NullPointerException in logcat."};
    CHECK(specification_from_raw_report(comment_only).expects_crash);
}

TEST_CASE("analysis distills a well-formed reply into a specification") {
    LlmGateway gateway = scripted_gateway({analysis_rule(
        "", R"({"steps": ["  Open settings  ", "Toggle dark mode"],
                "symptoms": [" the toggle snaps back "],
                "expects_crash": false})")});
    BugReport report = parse_report("Dark mode toggle reverts\n\nFlip it; it flips back.", "toggle");
    ReproductionSpecification spec = analyze_report(report, gateway);
    REQUIRE(spec.steps.size() == 2);
    CHECK(spec.steps[0] == "Open settings"); // trimmed
    CHECK(spec.steps[1] == "Toggle dark mode");
    REQUIRE(spec.symptoms.size() == 1);
    CHECK(spec.symptoms[0] == "the toggle snaps back");
    CHECK_FALSE(spec.expects_crash);
    CHECK(gateway.ledger().calls == 1);
}

TEST_CASE("analysis prompts embed the rendered report") {
    // The rule only fires when the report text made it into the prompt.
    LlmGateway gateway = scripted_gateway({analysis_rule(
        "Dark mode toggle reverts",
        R"({"steps": ["s"], "symptoms": ["y"], "expects_crash": true})")});
    BugReport report = parse_report("Dark mode toggle reverts\n\nFlip it.", "toggle");
    ReproductionSpecification spec = analyze_report(report, gateway);
    CHECK(spec.expects_crash);
}

TEST_CASE("malformed analysis output is re-asked with the complaint attached") {
    // First attempt: no format-error notice in the prompt, so the garbage
    // rule wins. The re-ask prompt carries the complaint, which the first
    // rule keys on.
    LlmGateway gateway = scripted_gateway(
        {analysis_rule("Your previous reply could not be used",
                       R"({"steps": ["Tap retry"], "symptoms": ["spinner never stops"],
                           "expects_crash": false})"),
         analysis_rule("", "I cannot answer that in JSON, sorry.")});
    BugReport report = parse_report("Spinner never stops", "spin");
    ReproductionSpecification spec = analyze_report(report, gateway);
    CHECK(spec.steps == std::vector<std::string>{"Tap retry"});
    CHECK(gateway.ledger().calls == 2);
}

TEST_CASE("persistently malformed analysis gives up after three attempts") {
    LlmGateway gateway = scripted_gateway({analysis_rule("", R"({"steps": [], "symptoms": [],
        "expects_crash": false})")});
    BugReport report = parse_report("Broken beyond words", "b");
    CHECK_THROWS_AS(analyze_report(report, gateway), UnparseableSpecificationError);
    CHECK(gateway.ledger().calls == 3);
}

TEST_CASE("near-miss analysis replies are each rejected for their own reason") {
    auto reject = [](const std::string& reply) {
        LlmGateway gateway = scripted_gateway({analysis_rule("", reply)});
        BugReport report = parse_report("t", "t");
        CHECK_THROWS_AS(analyze_report(report, gateway), UnparseableSpecificationError);
    };
    reject("not json at all");
    reject(R"(["steps"])");                                             // not an object
    reject(R"({"symptoms": ["s"], "expects_crash": true})");            // steps missing
    reject(R"({"steps": ["s"], "expects_crash": true})");               // symptoms missing
    reject(R"({"steps": ["s"], "symptoms": ["y"]})");                   // flag missing
    reject(R"({"steps": ["s"], "symptoms": ["y"], "expects_crash": "yes"})"); // flag not bool
    reject(R"({"steps": [""], "symptoms": ["y"], "expects_crash": true})");   // blank entry
    reject(R"({"steps": [42], "symptoms": ["y"], "expects_crash": true})");   // non-string
}

TEST_CASE("analysis accepts JSON wrapped in prose or code fences") {
    LlmGateway gateway = scripted_gateway({analysis_rule(
        "", "Here is my answer:\n```json\n{\"steps\": [\"Go\"], \"symptoms\": [\"boom\"],"
            " \"expects_crash\": true}\n```\nLet me know if you need more.")});
    BugReport report = parse_report("t", "t");
    ReproductionSpecification spec = analyze_report(report, gateway);
    CHECK(spec.steps == std::vector<std::string>{"Go"});
    CHECK(spec.expects_crash);
}
