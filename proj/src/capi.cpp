// SPDX-License-Identifier: Apache-2.0
#include "totalizer/totalizer.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "totalizer/driver.hpp"

struct tz_session {
  totalizer::RunConfig config;
  std::string error;
  std::string text;
  std::string json;
};

namespace {

tz_status fail(tz_session* s, tz_status st, std::string msg) {
  s->error = std::move(msg);
  return st;
}

template <class F>
tz_status guarded(tz_session* s, F&& f) {
  if (!s) return TZ_ERR_ARGUMENT;
  s->error.clear();
  try {
    return f();
  } catch (const totalizer::EditParseError& e) {
    return fail(s, TZ_ERR_EDITS, e.what());
  } catch (const totalizer::ParseError& e) {
    return fail(s, TZ_ERR_PARSE, e.what());
  } catch (const totalizer::LayoutError& e) {
    return fail(s, TZ_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(s, TZ_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* tz_version(void) { return "0.1.0"; }

tz_session* tz_session_create(void) { return new (std::nothrow) tz_session(); }

void tz_session_destroy(tz_session* s) { delete s; }

const char* tz_last_error(const tz_session* s) { return s ? s->error.c_str() : ""; }

tz_status tz_load_edits_file(tz_session* s, const char* path) {
  return guarded(s, [&] {
    if (!path) return fail(s, TZ_ERR_ARGUMENT, "null path");
    try {
      totalizer::load_edits_file(path);
    } catch (const totalizer::Error& e) {
      return fail(s, TZ_ERR_EDITS, e.what());
    }
    s->config.edit_files.push_back(path);
    return TZ_OK;
  });
}

tz_status tz_load_edits_text(tz_session* s, const char* text) {
  return guarded(s, [&] {
    if (!text) return fail(s, TZ_ERR_ARGUMENT, "null text");
    totalizer::parse_edits(text);
    s->config.edit_texts.push_back(text);
    return TZ_OK;
  });
}

tz_status tz_add_input(tz_session* s, const char* path) {
  return guarded(s, [&] {
    if (!path) return fail(s, TZ_ERR_ARGUMENT, "null path");
    s->config.inputs.push_back(path);
    return TZ_OK;
  });
}

tz_status tz_set_output_dir(tz_session* s, const char* dir) {
  return guarded(s, [&] {
    if (!dir) return fail(s, TZ_ERR_ARGUMENT, "null directory");
    s->config.out_dir = dir;
    return TZ_OK;
  });
}

tz_status tz_set_iface_dir(tz_session* s, const char* dir) {
  return guarded(s, [&] {
    s->config.iface_dir = dir ? dir : "";
    return TZ_OK;
  });
}

tz_status tz_set_strict(tz_session* s, int strict) {
  return guarded(s, [&] {
    s->config.strict = strict != 0;
    return TZ_OK;
  });
}

tz_status tz_set_report(tz_session* s, int report) {
  return guarded(s, [&] {
    s->config.report = report != 0;
    return TZ_OK;
  });
}

tz_status tz_run(tz_session* s, int* exit_code) {
  return guarded(s, [&] {
    totalizer::RunResult r = totalizer::run(s->config);
    s->text = totalizer::report_text(r);
    s->json = totalizer::report_json(r);
    if (exit_code) *exit_code = r.exit_code;
    if (!r.errors.empty()) return fail(s, TZ_ERR_RUN, r.errors.front().message);
    return TZ_OK;
  });
}

const char* tz_report_text(const tz_session* s) { return s ? s->text.c_str() : ""; }
const char* tz_report_json(const tz_session* s) { return s ? s->json.c_str() : ""; }

tz_status tz_translate_source(tz_session* s, const char* source, char** out) {
  return guarded(s, [&] {
    if (!source || !out) return fail(s, TZ_ERR_ARGUMENT, "null argument");
    totalizer::EditSet edits;
    for (const auto& f : s->config.edit_files) edits.merge(totalizer::load_edits_file(f));
    for (const auto& t : s->config.edit_texts) edits.merge(totalizer::parse_edits(t));
    totalizer::IfaceTable table;
    auto r = totalizer::translate_source(source, "<source>", table, edits);
    char* buf = static_cast<char*>(std::malloc(r.text.size() + 1));
    if (!buf) return fail(s, TZ_ERR_INTERNAL, "out of memory");
    std::memcpy(buf, r.text.c_str(), r.text.size() + 1);
    *out = buf;
    return TZ_OK;
  });
}

void tz_string_free(char* p) { std::free(p); }

}  // extern "C"
