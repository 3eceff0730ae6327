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
from django.apps import AppConfig


class DfContoursApp(AppConfig):
    name = "df_contours"
    verbose_name = "Contour dynamics and splash monitoring"

    def ready(self):
        # noinspection PyUnresolvedReferences
        import df_contours.checks
