// SPDX-License-Identifier: Apache-2.0
//
// oobce: dual-band MIMO-OFDM link-level simulator for out-of-band aided
// mmWave channel estimation
// Copyright (C) 2026 The oobce authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "oobce/channel_model.hpp"
#include "oobce/channel_tensor.hpp"
#include "oobce/config.hpp"
#include "oobce/fusion.hpp"
#include "oobce/geometry.hpp"
#include "oobce/harness.hpp"
#include "oobce/link_eval.hpp"
#include "oobce/parallel.hpp"
#include "oobce/pipeline.hpp"
#include "oobce/rng.hpp"
#include "oobce/tdl_profile.hpp"
#include "oobce/training.hpp"
#include "oobce/validate.hpp"
#include "oobce/weight_search.hpp"
#include "oobce/weight_table.hpp"
