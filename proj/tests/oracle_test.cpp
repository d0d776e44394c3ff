#include "uirepro/errors.hpp"
#include "uirepro/run/oracle.hpp"
#include "uirepro/run/replay.hpp"
#include "uirepro/sim/app_model.hpp"
#include "uirepro/sim/sim_device.hpp"

#include "support/script_gen.hpp"

#include <doctest.h>

#include <memory>
#include <string>
#include <vector>

using namespace uirepro;
using testsupport::FixtureEntry;
using testsupport::fixture_dir;
using testsupport::load_fixture_index;

namespace {

// One editable field: the only way forward is typing something that matches
// a pattern no default payload would hit.
const char* kVaultAppJson = R"({
  "schema": 1,
  "app_name": "Vaulted",
  "initial_state": "lock",
  "states": {
    "lock": {
      "activity": "LockActivity",
      "visual": "a passphrase prompt",
      "hierarchy_xml": "<node class=\"android.widget.FrameLayout\"><node class=\"android.widget.EditText\" text=\"Passphrase\" resource-id=\"com.v:id/pass\" editable=\"true\"/></node>"
    },
    "boom": {
      "activity": "LockActivity",
      "visual": "a dead vault",
      "hierarchy_xml": "<node class=\"android.widget.TextView\" text=\"x\"/>"
    }
  },
  "rules": [
    {"from": "lock", "on": {"kind": "input_text", "target_resource_id": "com.v:id/pass", "input_pattern": "hunter2"}, "to": "boom"}
  ],
  "bugs": [
    {"id": "vault-crash", "kind": "crash", "trigger": "boom",
     "crash_log": "java.lang.SecurityException: vault poked"}
  ]
})";

// The bug's trigger state is the initial screen.
const char* kBornBrokenJson = R"({
  "schema": 1,
  "app_name": "BornBroken",
  "initial_state": "home",
  "states": {
    "home": {
      "activity": "HomeActivity",
      "visual": "the banner is already garbled",
      "hierarchy_xml": "<node class=\"android.widget.TextView\" text=\"?\"/>"
    }
  },
  "rules": [],
  "bugs": [
    {"id": "garbled-banner", "kind": "non_crash", "trigger": "home",
     "symptom": "the banner is already garbled"}
  ]
})";

} // namespace

TEST_CASE("the oracle finds the declared shortest depth for every fixture") {
    for (const FixtureEntry& entry : load_fixture_index(fixture_dir())) {
        CAPTURE(entry.name);
        SimApp app = load_app_model(entry.app);
        std::optional<std::vector<UIAction>> sequence =
            brute_force_oracle(app, entry.bug_id, 30);
        REQUIRE(sequence);
        CHECK(sequence->size() == static_cast<size_t>(entry.gt_depth));
    }
}

TEST_CASE("every oracle sequence replays to a confirmation on a fresh device") {
    for (const FixtureEntry& entry : load_fixture_index(fixture_dir())) {
        CAPTURE(entry.name);
        auto app = std::make_shared<const SimApp>(load_app_model(entry.app));
        std::optional<std::vector<UIAction>> sequence =
            brute_force_oracle(*app, entry.bug_id, 30);
        REQUIRE(sequence);

        SimDevice device(app);
        VerificationResult result =
            replay(*sequence, device,
                   entry.symptom.empty() ? std::nullopt
                                         : std::optional<std::string>(entry.symptom));
        CHECK(result.confirmed);
        if (entry.crash) {
            CHECK(result.evidence.find("crash observed at step " +
                                       std::to_string(entry.gt_depth)) != std::string::npos);
        } else {
            CHECK(result.evidence == "final screen shows the symptom: " + entry.symptom);
        }
    }
}

TEST_CASE("an unknown bug id is a caller error") {
    SimApp app = load_app_model(fixture_dir() / "apps" / "amaze-mini.json");
    CHECK_THROWS_AS(brute_force_oracle(app, "no-such-bug", 30), Error);
}

TEST_CASE("a depth cap below the shortest reproduction means unreachable") {
    FixtureEntry amaze = [] {
        for (const FixtureEntry& entry : load_fixture_index(fixture_dir())) {
            if (entry.name == "amaze-mini") {
                return entry;
            }
        }
        throw Error("amaze-mini missing from the fixture index");
    }();
    SimApp app = load_app_model(amaze.app);
    CHECK_FALSE(brute_force_oracle(app, amaze.bug_id, amaze.gt_depth - 1).has_value());
    CHECK(brute_force_oracle(app, amaze.bug_id, amaze.gt_depth).has_value());
}

TEST_CASE("input payload candidates come from the state's own trigger patterns") {
    SimApp app = parse_app_model(kVaultAppJson, "test");
    std::optional<std::vector<UIAction>> sequence = brute_force_oracle(app, "vault-crash", 5);
    REQUIRE(sequence);
    REQUIRE(sequence->size() == 1);
    CHECK((*sequence)[0].kind == ActionKind::InputText);
    CHECK((*sequence)[0].text == "hunter2"); // the literal pattern, not "test"
}

TEST_CASE("a non-crash bug whose trigger is the initial state needs zero actions") {
    SimApp app = parse_app_model(kBornBrokenJson, "test");
    std::optional<std::vector<UIAction>> sequence =
        brute_force_oracle(app, "garbled-banner", 5);
    REQUIRE(sequence);
    CHECK(sequence->empty());
}

TEST_CASE("replay rejects traces that no longer fit the app") {
    auto app = std::make_shared<const SimApp>(
        load_app_model(fixture_dir() / "apps" / "amaze-mini.json"));
    SimDevice device(app);
    VerificationResult result = replay({UIAction::click("n999")}, device);
    CHECK_FALSE(result.confirmed);
    CHECK(result.evidence.rfind("step 1 could not be executed:", 0) == 0);
}

TEST_CASE("an uneventful replay confirms nothing") {
    auto app = std::make_shared<const SimApp>(
        load_app_model(fixture_dir() / "apps" / "amaze-mini.json"));
    SimDevice device(app);
    VerificationResult bare = replay({UIAction::rotate()}, device);
    CHECK_FALSE(bare.confirmed);
    CHECK(bare.evidence == "no crash observed and no expected symptom was given");

    SimDevice again(app);
    VerificationResult wrong_symptom =
        replay({UIAction::rotate()}, again, "a symptom that is not on screen");
    CHECK_FALSE(wrong_symptom.confirmed);
    CHECK(wrong_symptom.evidence.rfind("final screen does not show the symptom:", 0) == 0);
}
