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
from django.conf import settings

from df_contours import constants

# "sync", "thread", "process"
CONTOURS_WORKERS = getattr(settings, "CONTOURS_WORKERS", constants.WORKER_THREAD)
CONTOURS_POOL_SIZE = getattr(settings, "CONTOURS_POOL_SIZE", 4)
CONTOURS_BLOCK_ROWS = getattr(settings, "CONTOURS_BLOCK_ROWS", 128)
CONTOURS_CONFIG_DEFAULTS = getattr(settings, "CONTOURS_CONFIG_DEFAULTS", {})
CONTOURS_OUTPUT_DIR = getattr(settings, "CONTOURS_OUTPUT_DIR", "contours-output")
CONTOURS_CSV_DIGITS = getattr(settings, "CONTOURS_CSV_DIGITS", 17)
