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

import df_contours
from df_contours.management.base import ContourCommand


class Command(ContourCommand):
    help = "Print the versions of df_contours and of its numerical stack"

    def handle(self, *args, **options):
        import django
        import numpy
        import scipy

        self.stdout.write("df_contours %s" % df_contours.__version__)
        self.stdout.write("django %s" % django.get_version())
        self.stdout.write("numpy %s" % numpy.__version__)
        self.stdout.write("scipy %s" % scipy.__version__)
