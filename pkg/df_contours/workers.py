# ##############################################################################
#  This file is part of df_contours                                            #
#                                                                              #
#  You may use, distribute and modify this code under the                      #
#  terms of the (BSD-like) CeCILL-B license.                                   #
#                                                                              #
#  You should have received a copy of the CeCILL-B license with                #
#  this file. If not, please visit:                                            #
#  https://cecill.info/licences/Licence_CeCILL-B_V1-en.txt (English)           #
#  or https://cecill.info/licences/Licence_CeCILL-B_V1-fr.txt (French)         #
#                                                                              #
# ##############################################################################
"""Block-parallel assembly over target nodes
=========================================

Velocity assemblies are split into blocks of consecutive target rows. Blocks are evaluated
in-process (`"sync"`), in a thread pool (`"thread"`) or in a process pool (`"process"`, each
worker running `django.setup` first) and concatenated in row order, so the result does not
depend on the worker mode, the pool size or the block size.
"""
import atexit
import logging
import multiprocessing.pool
from typing import Dict, Optional, Tuple

import django
import numpy as np
from django.core.exceptions import ImproperlyConfigured

from df_contours import ct_settings
from df_contours.constants import WORKER_PROCESS, WORKER_SYNC, WORKER_THREAD

logger = logging.getLogger("df_contours.workers")
_POOLS: Dict[Tuple[str, int], multiprocessing.pool.Pool] = {}


def get_pool(mode: str, size: int) -> multiprocessing.pool.Pool:
    key = (mode, size)
    if key not in _POOLS:
        if mode == WORKER_THREAD:
            logger.debug("start a thread pool of size %d", size)
            pool = multiprocessing.pool.ThreadPool(size)
        elif mode == WORKER_PROCESS:
            logger.debug("start a process pool of size %d", size)
            pool = multiprocessing.pool.Pool(size, initializer=django.setup, initargs=())
        else:
            raise ImproperlyConfigured("Invalid CONTOURS_WORKERS settings: %s" % mode)
        _POOLS[key] = pool
    return _POOLS[key]


@atexit.register
def close_pools():
    """Close and join every cached pool; registered to run at interpreter exit."""
    for (mode, size), pool in _POOLS.items():
        logger.debug("close the %s pool of size %d", mode, size)
        pool.close()
        pool.join()
    _POOLS.clear()


def blocks(n_rows: int, block_rows: int):
    return [(start, min(start + block_rows, n_rows)) for start in range(0, n_rows, block_rows)]


def map_rows(
    function,
    n_rows: int,
    *args,
    mode: Optional[str] = None,
    block_rows: Optional[int] = None,
    pool_size: Optional[int] = None,
) -> np.ndarray:
    """Evaluate `function(start, stop, *args)` on row blocks and join them on the last axis.

    `function` must be a module-level callable in process mode.
    """
    mode = mode or ct_settings.CONTOURS_WORKERS
    block_rows = block_rows or ct_settings.CONTOURS_BLOCK_ROWS
    pool_size = pool_size or ct_settings.CONTOURS_POOL_SIZE
    tasks = [bounds + args for bounds in blocks(n_rows, block_rows)]
    if mode == WORKER_SYNC or len(tasks) == 1:
        results = [function(*task) for task in tasks]
    else:
        results = get_pool(mode, pool_size).starmap(function, tasks)
    return np.concatenate(results, axis=-1)
