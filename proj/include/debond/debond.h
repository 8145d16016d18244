/* C interface to the debonding simulator. */
#ifndef DEBOND_DEBOND_H
#define DEBOND_DEBOND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DEBOND_API __declspec(dllexport)
#else
#define DEBOND_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum debond_status {
  DEBOND_OK = 0,
  DEBOND_ERR_VALIDATION = 1, /* bad config or violated precondition */
  DEBOND_ERR_NUMERICAL = 2,  /* solver or invariant failure */
  DEBOND_ERR_IO = 3,
  DEBOND_ERR_ARGUMENT = 4    /* null handle or pointer, bad array */
} debond_status;

typedef struct debond_problem debond_problem;
typedef struct debond_run debond_run;

/* JSON object {"error", "message", "pointer"} describing the last failure on
   this thread, or "{}" when the last call succeeded. Valid until the next call. */
DEBOND_API const char* debond_last_error(void);

DEBOND_API debond_status debond_problem_from_json(const char* text, debond_problem** out);
DEBOND_API debond_status debond_problem_from_file(const char* path, debond_problem** out);
/* Replaces epsilon and the grid step; the other data stay the same. */
DEBOND_API debond_status debond_problem_set_epsilon(debond_problem* problem, double epsilon, double ds);
DEBOND_API void debond_problem_free(debond_problem* problem);

/* Incremental solver. */
DEBOND_API debond_status debond_run_create(const debond_problem* problem, debond_run** out);
DEBOND_API debond_status debond_run_advance(debond_run* run, double t);
DEBOND_API double debond_run_time(const debond_run* run);
/* Front position at time t <= debond_run_time(run). */
DEBOND_API debond_status debond_run_front(const debond_run* run, double t, double* ell);
/* Copies up to `capacity` front knots into `values`; `count` receives the total. */
DEBOND_API debond_status debond_run_knots(const debond_run* run, double* values, size_t capacity, size_t* count);
DEBOND_API void debond_run_free(debond_run* run);

/* Experiments. Each writes its report files into out_dir and, when `summary`
   is not null, a heap JSON summary to release with debond_string_free. */
DEBOND_API debond_status debond_simulate(const debond_problem* problem, const char* out_dir, int dump_field,
                                         char** summary);
DEBOND_API debond_status debond_quasistatic(const debond_problem* problem, const char* out_dir, char** summary);
/* eps may be null (list from the config or the default). */
DEBOND_API debond_status debond_sweep(const debond_problem* problem, const double* eps, size_t n_eps,
                                      const char* out_dir, char** summary);
DEBOND_API debond_status debond_jump(const debond_problem* problem, const char* out_dir, char** summary);
/* `passed` receives 1 when every check holds. */
DEBOND_API debond_status debond_verify(const debond_problem* problem, uint64_t seed, const char* out_dir,
                                       char** summary, int* passed);
/* Grid steps ds, ds/2, ds/4 from the config. */
DEBOND_API debond_status debond_oracle(const debond_problem* problem, const char* out_dir, char** summary,
                                       int* passed);

DEBOND_API void debond_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif
