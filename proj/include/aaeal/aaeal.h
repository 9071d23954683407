// Copyright 2026 The aaeal Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the aaeal engine: semi-supervised adversarial-autoencoder
 * training driven by pool-based active learning.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns an aaeal_status; on failure a message for the
 * calling thread is available from aaeal_last_error() until the next call.
 */
#ifndef AAEAL_AAEAL_H_
#define AAEAL_AAEAL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(AAEAL_BUILDING_LIBRARY)
#define AAEAL_API __attribute__((visibility("default")))
#else
#define AAEAL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aaeal_status {
  AAEAL_OK = 0,
  AAEAL_ERR_INPUT = 1,      /* bad argument or unknown id */
  AAEAL_ERR_SHAPE = 2,      /* dimension mismatch */
  AAEAL_ERR_STATE = 3,      /* operation invalid in the current state */
  AAEAL_ERR_FORMAT = 4,     /* malformed file */
  AAEAL_ERR_CONFIG = 5,     /* inconsistent configuration */
  AAEAL_ERR_IO = 6,         /* filesystem failure */
  AAEAL_ERR_CONFLICT = 7,   /* request collides with service state */
  AAEAL_ERR_VALIDATION = 8, /* invalid request payload */
  AAEAL_ERR_NUMERIC = 9,    /* non-finite value produced */
  AAEAL_ERR_INTERNAL = 10
} aaeal_status;

typedef struct aaeal_config_s* aaeal_config;
typedef struct aaeal_dataset_s* aaeal_dataset;
typedef struct aaeal_service_s* aaeal_service;

typedef struct aaeal_train_result {
  size_t labeled;
  size_t unlabeled;
  double val_acc;
  double test_acc;
} aaeal_train_result;

typedef struct aaeal_al_summary {
  size_t rounds;
  size_t labeled;
  int64_t actions;
  double final_val_acc;
  double final_test_acc;
  double final_unlabeled_acc; /* accuracy on the unlabeled rest of the pool */
} aaeal_al_summary;

AAEAL_API const char* aaeal_version(void);
AAEAL_API const char* aaeal_status_name(aaeal_status status);
AAEAL_API const char* aaeal_last_error(void);

/* Configuration: defaults overlaid with JSON documents. */
AAEAL_API aaeal_status aaeal_config_create(aaeal_config* out);
AAEAL_API aaeal_status aaeal_config_load(const char* path, aaeal_config* out);
AAEAL_API aaeal_status aaeal_config_merge_json(aaeal_config cfg,
                                               const char* json_text);
/* Writes the effective config as JSON. *needed receives the size including
 * the terminating NUL; buf may be NULL to query it. */
AAEAL_API aaeal_status aaeal_config_to_json(aaeal_config cfg, char* buf,
                                            size_t capacity, size_t* needed);
AAEAL_API void aaeal_config_free(aaeal_config cfg);

/* Datasets: a directory of binary PGMs joined with an id,p_positive CSV. */
AAEAL_API aaeal_status aaeal_dataset_load(const char* image_dir,
                                          const char* labels_csv,
                                          aaeal_dataset* out);
AAEAL_API aaeal_status aaeal_dataset_synthesize(size_t n, size_t side,
                                                double p_class1,
                                                double noise_sigma,
                                                uint64_t seed,
                                                aaeal_dataset* out);
/* Writes <id>.pgm files and labels.csv into dir. */
AAEAL_API aaeal_status aaeal_dataset_save(aaeal_dataset ds, const char* dir);
AAEAL_API size_t aaeal_dataset_size(aaeal_dataset ds);
AAEAL_API void aaeal_dataset_free(aaeal_dataset ds);

/* Trains on a random label_fraction of the train split (the rest of the split
 * is the unlabeled pool) and saves the model checkpoint. */
AAEAL_API aaeal_status aaeal_train(aaeal_dataset ds, aaeal_config cfg,
                                   double label_fraction,
                                   const char* model_path,
                                   aaeal_train_result* out);
/* Accuracy of a saved model on "train", "val", "test" or "all". */
AAEAL_API aaeal_status aaeal_evaluate(aaeal_dataset ds, aaeal_config cfg,
                                      const char* model_path,
                                      const char* split, double* accuracy);
/* Active-learning run with the dataset oracle. resume_path (nullable) loads a
 * saved run; checkpoint_path (nullable) is rewritten after every round;
 * max_rounds > 0 stops after that many rounds in this call. */
AAEAL_API aaeal_status aaeal_al_run(aaeal_dataset ds, aaeal_config cfg,
                                    const char* report_csv_path,
                                    const char* resume_path,
                                    const char* checkpoint_path,
                                    size_t max_rounds, aaeal_al_summary* out);
AAEAL_API aaeal_status aaeal_scaling_experiment(aaeal_dataset ds,
                                                aaeal_config cfg,
                                                const char* csv_path,
                                                size_t* rows);

/* Markup-action accounting and corpus-level extrapolation. */
AAEAL_API aaeal_status aaeal_markup_actions(int64_t n_labeled,
                                            int64_t votes_per_label,
                                            int64_t* out);
AAEAL_API aaeal_status aaeal_composed_accuracy(int64_t labeled, int64_t corpus,
                                               double acc_u, double* out);
AAEAL_API aaeal_status aaeal_ratio_r(double corpus, double labeled, double* out);

/* Human-oracle labeling service. The dataset handle may be freed after the
 * service is created. */
AAEAL_API aaeal_status aaeal_service_create(aaeal_dataset ds, aaeal_config cfg,
                                            aaeal_service* out);
AAEAL_API aaeal_status aaeal_service_resume(aaeal_dataset ds,
                                            const char* checkpoint_path,
                                            const char* autosave_path,
                                            aaeal_service* out);
/* Blocks serving HTTP until aaeal_service_stop(). */
AAEAL_API aaeal_status aaeal_service_listen(aaeal_service svc, const char* host,
                                            int port);
AAEAL_API aaeal_status aaeal_service_stop(aaeal_service svc);
AAEAL_API aaeal_status aaeal_service_save_checkpoint(aaeal_service svc,
                                                     const char* path);
AAEAL_API void aaeal_service_free(aaeal_service svc);

#ifdef __cplusplus
}
#endif

#endif /* AAEAL_AAEAL_H_ */
