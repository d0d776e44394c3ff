#pragma once

#include "uirepro/llm/roles.hpp"

#include <string>
#include <vector>

namespace uirepro {

// Bumped whenever any template's wording changes, so recorded transcripts can
// be matched to the exact prompt text that produced them.
extern const char* const kPromptTemplateVersion;

// The template text for a role, with {{attribute}} placeholders.
const std::string& prompt_template(PromptRole role);

// The attributes a role's template requires, in template order.
const std::vector<std::string>& required_attributes(PromptRole role);

// Renders the template for ctx.role by substituting every {{attribute}}
// placeholder verbatim. All required attributes must be supplied; the only
// extra attribute accepted is "format error", which appends a corrective
// note for re-asks. Throws MissingAttributeError naming the offender.
std::string build_prompt(const PromptContext& ctx);

} // namespace uirepro
