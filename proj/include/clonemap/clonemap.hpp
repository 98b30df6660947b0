// Copyright 2026 The clonemap Authors
// Licensed under the Apache License, Version 2.0

#ifndef CLONEMAP_CLONEMAP_HPP
#define CLONEMAP_CLONEMAP_HPP

#include "clone_algebra.hpp"
#include "corpus.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "file_set.hpp"
#include "maxclone.hpp"
#include "maxclone_json.hpp"
#include "similarity.hpp"
#include "suffix_index.hpp"
#include "traversal.hpp"
#include "viz.hpp"

#define CLONEMAP_VERSION "0.1.0"

#endif
