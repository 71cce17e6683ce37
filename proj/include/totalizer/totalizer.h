/* SPDX-License-Identifier: Apache-2.0 */
#ifndef TOTALIZER_TOTALIZER_H
#define TOTALIZER_TOTALIZER_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TZ_API __declspec(dllexport)
#else
#define TZ_API __attribute__((visibility("default")))
#endif

typedef struct tz_session tz_session;

typedef enum tz_status {
  TZ_OK = 0,
  TZ_ERR_ARGUMENT = 1,  /* null handle or argument */
  TZ_ERR_EDITS = 2,     /* edits file missing or malformed */
  TZ_ERR_PARSE = 3,     /* source text outside the supported syntax */
  TZ_ERR_RUN = 4,       /* translation run reported errors */
  TZ_ERR_INTERNAL = 5
} tz_status;

TZ_API const char* tz_version(void);

TZ_API tz_session* tz_session_create(void);
TZ_API void tz_session_destroy(tz_session* s);

/* Message of the last failed call on this session, or "". Owned by the session. */
TZ_API const char* tz_last_error(const tz_session* s);

TZ_API tz_status tz_load_edits_file(tz_session* s, const char* path);
TZ_API tz_status tz_load_edits_text(tz_session* s, const char* text);
TZ_API tz_status tz_add_input(tz_session* s, const char* path);
TZ_API tz_status tz_set_output_dir(tz_session* s, const char* dir);
TZ_API tz_status tz_set_iface_dir(tz_session* s, const char* dir);
TZ_API tz_status tz_set_strict(tz_session* s, int strict);
TZ_API tz_status tz_set_report(tz_session* s, int report);

/* Translates every input. `exit_code` receives 0, 1 or 2 as the command line tool would exit.
   Returns TZ_ERR_RUN when the run had errors; the report is available either way. */
TZ_API tz_status tz_run(tz_session* s, int* exit_code);

/* Reports of the last run. Owned by the session until the next run. */
TZ_API const char* tz_report_text(const tz_session* s);
TZ_API const char* tz_report_json(const tz_session* s);

/* Translates one module from source text with the session's edits and no output files.
   On success `*out` receives the vernacular text, freed with tz_string_free. */
TZ_API tz_status tz_translate_source(tz_session* s, const char* source, char** out);
TZ_API void tz_string_free(char* p);

#ifdef __cplusplus
}
#endif

#endif
