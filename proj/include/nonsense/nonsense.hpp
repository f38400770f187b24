#pragma once

#include "nonsense/dataset_io.hpp"
#include "nonsense/document.hpp"
#include "nonsense/elementary_tasks.hpp"
#include "nonsense/ensemble.hpp"
#include "nonsense/errors.hpp"
#include "nonsense/generate.hpp"
#include "nonsense/ingest.hpp"
#include "nonsense/keyword_scheme.hpp"
#include "nonsense/pipeline.hpp"
#include "nonsense/rng.hpp"
#include "nonsense/rouge.hpp"
#include "nonsense/sampling.hpp"
#include "nonsense/step_tasks.hpp"
#include "nonsense/task_instance.hpp"
#include "nonsense/verify.hpp"
#include "nonsense/vocabulary.hpp"
