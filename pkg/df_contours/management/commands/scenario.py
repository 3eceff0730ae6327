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
import dataclasses

from django.core.management import CommandError

from df_contours import constants
from df_contours.config import SimConfig, load_config
from df_contours.evolution import snapshot
from df_contours.management.base import ContourCommand
from df_contours.persistence import snapshot_table
from df_contours.scenarios import CONTOUR, REGISTERED_SCENARIOS, get_scenario, make_scenario
from df_contours.splash_monitor import measure


class Command(ContourCommand):
    help = "Build the initial state of a scenario and print its diagnostics or its samples"

    def add_arguments(self, parser):
        parser.add_argument("--name", default=None, help="scenario name")
        parser.add_argument(
            "--set",
            dest="params",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="scenario parameter (repeatable)",
        )
        parser.add_argument("--config", default=None, help="take the grid from a run configuration")
        parser.add_argument("-n", type=int, default=256, help="number of nodes")
        parser.add_argument("--half-width", type=float, default=10.0)
        parser.add_argument("--dump", action="store_true", help="print the samples as CSV")
        parser.add_argument("--list", action="store_true", help="list the registered scenarios")

    def handle(self, *args, **options):
        if options["list"]:
            for name in sorted(REGISTERED_SCENARIOS):
                entry = REGISTERED_SCENARIOS[name]
                params = ", ".join("%s=%r" % item for item in sorted(entry.defaults.items()))
                self.stdout.write("%s (%s): %s" % (name, entry.kind, params))
            return
        with self.reporting_errors():
            config = self.get_config(options)
            state = make_scenario(
                config.scenario,
                config.scenario_params,
                system=config.system,
                n=config.n,
                domain=config.domain,
                half_width=config.half_width,
                densities=config.densities,
                decay_tol=config.decay_tol,
            )
            if options["dump"]:
                contour = config.system == constants.SYSTEM_SQG_CONTOUR
                self.stdout.write(snapshot_table(snapshot(state), contour), ending="")
                return
            diag = measure(state, config)
        self.write_summary(diag._asdict())

    @staticmethod
    def get_config(options) -> SimConfig:
        params = {}
        for assignment in options["params"]:
            if "=" not in assignment:
                raise CommandError("expected KEY=VALUE, got %r" % assignment, returncode=2)
            key, value = (x.strip() for x in assignment.split("=", 1))
            params[key] = value
        if options["config"]:
            config = load_config(options["config"])
            values = {
                "scenario": options["name"] or config.scenario,
                "scenario_params": {**config.scenario_params, **params},
            }
            return dataclasses.replace(config, **values)
        if not options["name"]:
            raise CommandError("--name or --config is required", returncode=2)
        entry = get_scenario(options["name"])
        system = constants.SYSTEM_SQG_CONTOUR if entry.kind == CONTOUR else constants.SYSTEM_MUSKAT
        return SimConfig(
            system=system,
            scenario=entry.name,
            scenario_params=params,
            n=options["n"],
            half_width=options["half_width"],
        )
