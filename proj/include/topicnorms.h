/*
 * C interface to the topicnorms library.
 *
 * All objects are opaque handles created and released through these
 * functions. Calls return TN_OK on success; on failure tn_last_error()
 * holds a message for the calling thread. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * tn_string_free().
 */
#ifndef TOPICNORMS_H
#define TOPICNORMS_H

#include <stddef.h>

#if defined(_WIN32)
#define TN_API __declspec(dllexport)
#else
#define TN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tn_status {
  TN_OK = 0,
  TN_ERR_INVALID = 2, /* malformed input or contract violation */
  TN_ERR_IO = 3       /* file could not be opened, read, or written */
} tn_status;

typedef struct tn_corpus tn_corpus;
typedef struct tn_store tn_store;

typedef struct tn_corpus_stats {
  long documents;
  long paragraphs;
  long sentences;
  long distinct_nouns;
  long distinct_verbs;
  long long nn_pairs;
  long long vn_pairs;
} tn_corpus_stats;

typedef struct tn_weights {
  double pn;
  double pv;
  int iterations;
  int converged;
} tn_weights;

TN_API const char* tn_version(void);
TN_API const char* tn_last_error(void);

/* lemma_path may be NULL for suffix-rule lemmatization only. */
TN_API tn_status tn_corpus_parse_file(const char* path, const char* lemma_path,
                                      tn_corpus** out);
TN_API tn_status tn_corpus_parse_buffer(const char* data, size_t size,
                                        const char* lemma_path,
                                        tn_corpus** out);
TN_API void tn_corpus_free(tn_corpus* corpus);
TN_API tn_status tn_corpus_get_stats(const tn_corpus* corpus,
                                     tn_corpus_stats* out);
/* Deterministic prefix split by document order, ratio train:heldout. */
TN_API tn_status tn_corpus_split(const tn_corpus* corpus, unsigned train_share,
                                 unsigned heldout_share, tn_corpus** train_out,
                                 tn_corpus** heldout_out);

TN_API tn_status tn_train(const tn_corpus* corpus, double c_noun, double c_verb,
                          int threads, tn_store** out);
TN_API tn_status tn_store_save(const tn_store* store, const char* path);
TN_API tn_status tn_store_load(const char* path, tn_store** out);
TN_API void tn_store_free(tn_store* store);
TN_API double tn_lookup_ann(const tn_store* store, const char* noun_a,
                            const char* noun_b);
TN_API double tn_lookup_anv(const tn_store* store, const char* noun,
                            const char* verb);

TN_API tn_status tn_estimate_weights(const tn_store* store,
                                     const tn_corpus* heldout, double init_pn,
                                     double tolerance, int max_iterations,
                                     tn_weights* out);
TN_API tn_status tn_weights_save(const tn_weights* weights, const char* path);
TN_API tn_status tn_weights_load(const char* path, tn_weights* out);

TN_API tn_status tn_identify(const tn_corpus* corpus, const tn_store* store,
                             const tn_weights* weights, double fraction,
                             int threads, char** tsv_out);
TN_API tn_status tn_shift(const tn_corpus* corpus, const tn_store* store,
                          const tn_weights* weights, double fraction,
                          char** tsv_out);
TN_API tn_status tn_evaluate(const tn_corpus* corpus, const tn_store* store,
                             const tn_weights* weights, const char* gold_path,
                             double fraction, int threads, char** report_out,
                             char** figure1_csv_out, char** figure2_csv_out);

TN_API void tn_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* TOPICNORMS_H */
