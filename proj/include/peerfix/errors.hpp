#pragma once

#include <stdexcept>
#include <string>

namespace peerfix {

// Base for all pipeline errors. Subclasses carry the offending path,
// submission id, or line number in the message.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// corpus
struct missing_file_error : error { using error::error; };
struct malformed_manifest_error : error { using error::error; };
struct dangling_assignment_ref_error : error { using error::error; };
struct duplicate_id_error : error { using error::error; };
struct no_annotations_error : error { using error::error; };

// c-analysis
struct lex_error : error {
    lex_error(const std::string& what, int line) : error(what), line(line) {}
    int line;
};
struct unterminated_comment_error : lex_error { using lex_error::lex_error; };
struct unterminated_string_error : lex_error { using lex_error::lex_error; };
struct fatal_parse_error : error { using error::error; };

// similarity
struct length_mismatch_error : error { using error::error; };
struct empty_pool_error : error { using error::error; };
struct missing_pass_vector_error : error { using error::error; };
struct weight_score_mismatch_error : error { using error::error; };
struct missing_annotations_error : error { using error::error; };

// prompting
struct missing_peer_error : error { using error::error; };
struct missing_tests_error : error { using error::error; };
struct prompt_too_long_error : error { using error::error; };

// llm-gateway
struct provider_unavailable_error : error { using error::error; };
struct auth_error : error { using error::error; };
struct rate_limited_error : error { using error::error; };
struct no_code_found_error : error { using error::error; };

// judge-harness
struct toolchain_missing_error : error { using error::error; };
struct sandbox_failure_error : error { using error::error; };
struct empty_verdict_list_error : error { using error::error; };

// cli
struct config_error : error { using error::error; };

}  // namespace peerfix
