"""
Django management command that runs one experiment and writes its report.

    python manage.py run hull2d scene.json --svg hull.svg
    python manage.py run maehara --dim 4
    python manage.py run dowker --r 0.5 --n 4..8 --setting inscribed-perimeter

Exit status is 0 when every assertion in the report holds, 1 when one
fails (the report is written first and names it) and 2 for bad input.
"""
import logging
import math

import numpy as np
from django.core.management.base import BaseCommand, CommandError

from ballpoly import bp3, constructions, diskpoly, hull, illumination, separation
from ballpoly.core import Tolerance
from ballpoly.exceptions import (
    BadParameters,
    BallPolyError,
    DegenerateConfiguration,
    DimensionMismatch,
    EmptyInput,
    HypothesisNotMet,
    InvalidPair,
    NotSeparable,
    OutOfRange,
    OutOfScope,
    PreconditionError,
    SceneError,
    SizeCapExceeded,
    Unsupported,
)
from ballpoly.reports import Report, write_atomic
from ballpoly.scene import load
from ballpoly.svg import SVGFigure

SUBCOMMANDS = (
    'hull2d', 'bp3-structure', 'euler-check', 'standardness', 'dowker', 'extremal', 'maehara',
    'titeica', 'kneser-poulsen', 'illuminate', 'separate', 'kirchberger', 'es-search',
)

INPUT_ERRORS = (
    SceneError, BadParameters, DimensionMismatch, EmptyInput, OutOfRange, InvalidPair, SizeCapExceeded,
    Unsupported, OutOfScope, PreconditionError, HypothesisNotMet, DegenerateConfiguration,
)

POLYTOPES = ('tetrahedron', 'cube', 'octahedron')

# options that belong to Django rather than to the experiment
DJANGO_OPTIONS = {'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color', 'skip_checks'}


def parse_range(text):
    """'4..8' -> (4, 8); '6' -> (6, 6)."""
    try:
        if '..' in text:
            lo, hi = text.split('..', 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise BadParameters(f"--n expects an integer or a range a..b, got {text!r}")


def parse_vector(text):
    try:
        return np.array([float(x) for x in text.split(',')])
    except ValueError:
        raise BadParameters(f"--u expects comma-separated numbers, got {text!r}")


class Command(BaseCommand):
    help = 'Run a spindle-convexity experiment on a JSON scene and write a JSON report'

    def add_arguments(self, parser):
        parser.add_argument('subcommand', choices=SUBCOMMANDS, help='Experiment to run')
        parser.add_argument(
            'scene',
            nargs='?',
            help='JSON scene. separate/kirchberger read points as A and centers as B; '
                 'kneser-poulsen reads centers as X and points as Y; 3D commands read centers'
        )
        parser.add_argument('--seed', type=int, default=0, help='Random seed (default 0)')
        parser.add_argument('--eps', type=float, help='Geometric tolerance eps_geom for this run')
        parser.add_argument('--svg', help='Write a figure of a planar scene to this path')
        parser.add_argument('--report', help='Report path (default <subcommand>.json)')
        parser.add_argument('--trials', type=int, help='Random trials, restarts or samples')
        parser.add_argument('--dim', type=int, default=4, help='Dimension for maehara (default 4)')
        parser.add_argument('--r', type=float, default=0.5, help='Circle radius for dowker/extremal')
        parser.add_argument('--n', default=None, help='Integer n or range a..b')
        parser.add_argument('--setting', help='Dowker setting, e.g. inscribed-perimeter')
        parser.add_argument('--kind', help='inscribed/circumscribed, a polytope name, or a radius mode')
        parser.add_argument('--objective', default='perimeter', choices=('perimeter', 'area'))
        parser.add_argument('--sense', choices=('max', 'min'))
        parser.add_argument('--k', type=float, default=20.0, help='Ball radius for polytope approximation')
        parser.add_argument('--delta', type=float, default=0.5, help='Offset of b_0 in the counterexample')
        parser.add_argument('--cap', type=int, help='Number of caps in the counterexample')
        parser.add_argument('--m', type=int, default=4, help='Subset size for es-search')
        parser.add_argument('--u', help='First frame direction for illuminate, e.g. 0,0,1')
        parser.add_argument(
            '--counterexample',
            action='store_true',
            help='Use the built-in counterexample (kirchberger, illuminate)'
        )

    def handle(self, *args, **options):
        if options['verbosity'] >= 2:
            logging.getLogger('ballpoly').setLevel(logging.DEBUG)
        name = options['subcommand']
        self.figure = None
        try:
            self.tol = Tolerance.from_config(eps_geom=options['eps'])
            scene = load(options['scene']) if options['scene'] else None
        except INPUT_ERRORS as exc:
            raise CommandError(str(exc), returncode=2) from exc

        inputs = {k: v for k, v in options.items() if k not in DJANGO_OPTIONS and v is not None}
        if scene is not None:
            inputs['scene_data'] = scene.to_dict()
        report = Report(name, inputs=inputs)
        handler = getattr(self, 'run_' + name.replace('-', '_'))
        try:
            handler(scene, options, report)
        except INPUT_ERRORS as exc:
            raise CommandError(f"{name}: {exc}", returncode=2) from exc
        except BallPolyError as exc:
            report.check(type(exc).__name__, False, str(exc))

        path = write_atomic(options['report'] or f"{name}.json", report.dumps())
        if options['svg']:
            if self.figure is None:
                self.stdout.write(self.style.WARNING(f'{name} produces no figure; --svg ignored'))
            else:
                self.figure.save(options['svg'])
                self.stdout.write(f'  figure: {options["svg"]}')

        if report.ok:
            self.stdout.write(
                self.style.SUCCESS(f'{name}: {len(report.assertions)} assertions hold (report {path})')
            )
            return
        for failed in report.failed:
            self.stdout.write(self.style.ERROR(f'  violated: {failed}'))
        raise CommandError(f"{name}: {len(report.failed)} assertion(s) violated, see {path}", returncode=1)

    # -- helpers -----------------------------------------------------------

    def _require(self, scene, field, dim=None):
        if scene is None:
            raise BadParameters(f"this subcommand needs a scene with {field}")
        values = getattr(scene, field)
        if values.shape[0] == 0:
            raise SceneError(f"{field} must not be empty", field=field)
        if dim is not None and scene.dim != dim:
            raise SceneError(f"expected a {dim}-dimensional scene", field='dim')
        return values

    def _body(self, scene, options):
        """Ball-polyhedron from the scene centers, or an approximated polytope named by --kind."""
        if scene is not None:
            return bp3.boundary_structure(self._require(scene, 'centers', dim=3), self.tol), None
        if options['kind'] not in POLYTOPES:
            raise BadParameters(f"give a scene or --kind one of {', '.join(POLYTOPES)}")
        vertices, faces = bp3.polytope_fixture(options['kind'])
        approximation = bp3.approximate_polyhedron(vertices, faces, options['k'], self.tol)
        return approximation['body'], approximation

    # -- planar hulls ------------------------------------------------------

    def run_hull2d(self, scene, options, report):
        X = scene.points if scene is not None and scene.points.shape[0] else self._require(scene, 'centers')
        if X.shape[1] != 2:
            raise SceneError("hull2d expects a planar scene", field='dim')
        H = hull.spindle_hull_2d(X, self.tol)
        report.results['hull'] = H.to_dict()
        report.check('points_in_hull', all(H.contains(x, self.tol) for x in X))
        if not isinstance(H, hull.ArcBoundary2):
            return
        report.results['perimeter'] = H.perimeter()
        report.check('vertices_in_spindle_position', hull.spindle_position(H.vertices, self.tol))
        rng = np.random.default_rng(options['seed'])
        rim = H.arc_points(8)
        picks = rng.integers(0, rim.shape[0], size=(40, 3))
        inner = np.einsum('ij,ijk->ik', rng.dirichlet(np.ones(3), size=40), rim[picks])
        sizes = [len(hull.caratheodory_steinitz_reduce(X, y, self.tol)) for y in np.vstack([X, inner])]
        report.results['caratheodory'] = {'checked': len(sizes), 'max_subset': max(sizes),
                                          'needing_three': sum(s == 3 for s in sizes)}
        report.check('caratheodory_bound', max(sizes) <= 3, {'max_subset': max(sizes)})

        lo, hi = X.min(axis=0) - 0.5, X.max(axis=0) + 0.5
        disagreements, compared = [], 0
        for p in rng.uniform(lo, hi, size=(options['trials'] or 200, 2)):
            if H.size > 1 and abs(np.max(np.linalg.norm(H.arc_centers - p, axis=1)) - 1.0) < 1e-6:
                continue
            compared += 1
            if H.contains(p, self.tol) != hull.spindle_hull_contains(X, p, self.tol):
                disagreements.append(p.tolist())
        report.check('membership_oracle_agrees', not disagreements,
                     {'compared': compared, 'disagreements': disagreements[:10]})

        self.figure = SVGFigure(X)
        self.figure.add_hull(H)
        for x in X:
            self.figure.add_dot(x)

    def run_es_search(self, scene, options, report):
        A = self._require(scene, 'points', dim=2)
        found = hull.es_search(A, options['m'], self.tol)
        report.results['subset'] = list(found) if found is not None else None
        if found is not None:
            report.check('subset_in_spindle_position', hull.spindle_position(A[list(found)], self.tol))
            self.figure = SVGFigure(A)
            self.figure.add_hull(hull.spindle_hull_2d(A[list(found)], self.tol))
            for x in A:
                self.figure.add_dot(x)

    # -- 3D structure ------------------------------------------------------

    def run_bp3_structure(self, scene, options, report):
        P, _ = self._body(scene, options)
        report.results['body'] = P.to_dict()
        report.results['counts'] = P.counts
        inside = all(np.all(np.linalg.norm(P.centers - v.point, axis=1) <= 1.0 + 10 * self.tol.eps_geom)
                     for v in P.vertices)
        report.check('vertices_in_body', inside)
        degrees = sum(d for _, d in P.edge_graph().degree())
        report.check('handshake', degrees == 2 * P.counts['E'],
                     {'degree_sum': degrees, 'E': P.counts['E']})

    def run_euler_check(self, scene, options, report):
        P, approximation = self._body(scene, options)
        checks = bp3.euler_and_graph_checks(P)
        report.results.update(checks)
        if approximation is not None:
            report.results['hausdorff'] = approximation['hausdorff']
        if checks['standard']:
            report.check('euler_characteristic', checks['chi'] == 2, {'chi': checks['chi']})
            report.check('simple_edge_graph', checks['simple'])
            report.check('planar_edge_graph', checks['planar'])
            report.check('three_connected_edge_graph', checks['three_connected'])

    def run_standardness(self, scene, options, report):
        P, approximation = self._body(scene, options)
        result = bp3.standardness_and_lattice(P, self.tol)
        report.results.update(result.to_dict())
        if result.standard:
            report.check('face_lattice_is_lattice', result.lattice.is_lattice())
            report.check('face_lattice_is_atomic', result.lattice.is_atomic())
        if result.standard and approximation is None:
            hulls = bp3.spindle_hull_of_edges_check(P, tol=self.tol)
            report.results['edge_hulls'] = hulls
            report.check('faces_in_spindle_hull_of_edges', hulls['in_edge_hull'],
                         {'excess': hulls['edge_excess'], 'slack': hulls['slack']})
            report.check('edges_outside_spindle_hull_of_vertices', hulls['outside_vertex_hull'],
                         {'excess': hulls['vertex_excess']})
        if approximation is not None:
            report.check('lattice_isomorphic_to_polytope', approximation['lattice_isomorphic'],
                         {'k': options['k'], 'kind': options['kind']})
            report.check('body_contains_polytope', approximation['contains_polytope'])

    # -- disk-polygons -----------------------------------------------------

    def run_dowker(self, scene, options, report):
        n_min, n_max = parse_range(options['n'] or '4..8')
        table = diskpoly.dowker_table(options['r'], n_min, n_max,
                                      [options['setting']] if options['setting'] else None)
        report.results['table'] = table.to_dict(orient='records')
        for row in table.itertuples(index=False):
            if row.status == 'conjecture':
                continue
            report.check(f'{row.setting}_n{row.n}', row.holds and row.margin > 1e-10, {'margin': row.margin})

        regular = diskpoly.regular_family(n_min, options['r'], 'inscribed', self.tol)
        outer = diskpoly.regular_family(n_min, options['r'], 'circumscribed', self.tol)
        self.figure = SVGFigure(np.vstack([regular.polygon.vertices, outer.polygon.vertices]))
        self.figure.add_circle(np.zeros(2), options['r'])
        self.figure.add_disk_polygon(regular.polygon)
        self.figure.add_disk_polygon(outer.polygon)

    def run_extremal(self, scene, options, report):
        n, _ = parse_range(options['n'] or '5')
        kind = options['kind'] or 'inscribed'
        sense = options['sense'] or ('max' if kind == 'inscribed' else 'min')
        result = diskpoly.extremal_search(n, options['r'], kind, options['objective'], sense,
                                          seed=options['seed'], restarts=options['trials'], tol=self.tol)
        report.results.update(result.to_dict())
        report.results['excess'] = result.excess
        report.check('regular_is_extremal', result.excess <= 1e-6, {'excess': result.excess})

        family = diskpoly.regular_family(n, options['r'], kind, self.tol)
        self.figure = SVGFigure(family.polygon.vertices)
        self.figure.add_circle(np.zeros(2), options['r'])
        self.figure.add_disk_polygon(family.polygon)

    # -- constructions -----------------------------------------------------

    def run_maehara(self, scene, options, report):
        n = options['dim']
        params = constructions.maehara_parameters(n)
        report.results['parameters'] = params.to_dict()
        report.check('g_vanishes_at_t_star', abs(params.residual) < 1e-12, {'g': params.residual})
        if n == 4:
            report.check('t_star_is_half', abs(params.t_star - 0.5) < 1e-12, {'t_star': params.t_star})
        center, radius = constructions.exsphere_opposite(params.vertices, params.vertices.shape[0] - 1)
        report.check('tangent_sphere_is_exsphere',
                     np.linalg.norm(center - params.center) < 1e-9 and abs(radius - params.r) < 1e-9,
                     {'exsphere_center': center, 'exsphere_radius': radius})
        family = constructions.maehara_family(n, self.tol)
        report.results['family'] = family.to_dict()
        residuals = family.report['leave_one_out_residuals']
        report.check('any_n_plus_1_meet', max(residuals) < 1e-8, {'residuals': residuals})
        report.check('all_n_plus_2_do_not_meet', family.report['full_margin'] > 1e-6,
                     {'margin': family.report['full_margin']})

    def run_titeica(self, scene, options, report):
        if scene is not None:
            C = self._require(scene, 'centers', dim=2)
            p = self._require(scene, 'points', dim=2)[0]
            if C.shape[0] != 3:
                raise SceneError("titeica expects exactly three centers", field='centers')
            triples = [(C, p)]
        else:
            rng = np.random.default_rng(options['seed'])
            triples = []
            while len(triples) < (options['trials'] or 1000):
                angles = rng.uniform(0.0, 2.0 * math.pi, 3)
                gaps = [abs((angles[i] - angles[j] + math.pi) % (2.0 * math.pi) - math.pi)
                        for i, j in ((0, 1), (1, 2), (0, 2))]
                if min(gaps) < 0.05 or max(gaps) > math.pi - 0.05:
                    continue
                triples.append((np.column_stack([np.cos(angles), np.sin(angles)]), np.zeros(2)))
        checks = [constructions.titeica_check(*C, p, tol=self.tol) for C, p in triples]
        deviations = [c['deviation'] for c in checks]
        report.results['triples'] = len(checks)
        report.results['max_deviation'] = max(deviations)
        report.results['first'] = checks[0]
        report.check('second_points_on_unit_circle', all(c['holds'] for c in checks),
                     {'max_deviation': max(deviations)})

        C, p = triples[0]
        self.figure = SVGFigure(np.vstack([C, p]))
        for c in C:
            self.figure.add_circle(c)
        self.figure.add_circle(checks[0]['center'])
        for q in [p] + checks[0]['points']:
            self.figure.add_dot(q)

    def run_kneser_poulsen(self, scene, options, report):
        if scene is not None:
            pair = constructions.ContractionPair(self._require(scene, 'centers', dim=2),
                                                 self._require(scene, 'points', dim=2))
            result = constructions.kp_experiments(pair, self.tol)
            report.results['pair'] = result
            report.check('inradius_does_not_shrink', result['inradius_ok'])
            report.check('inradius_identity', result['inradius_identity_error'] < 1e-8,
                         {'error': result['inradius_identity_error']})
            self._kp_figure(pair)
            return

        anchors = constructions.kp_anchor_pairs()
        diameter = constructions.kp_experiments(anchors['diameter'], self.tol)
        width = constructions.kp_experiments(anchors['width'], self.tol)
        report.results['anchors'] = {'diameter': diameter, 'width': width}
        report.check('diameter_can_shrink', diameter['diameter_delta'] < 0, diameter['diameter_delta'])
        report.check('circumradius_can_shrink', diameter['circumradius_delta'] < 0, diameter['circumradius_delta'])
        report.check('min_width_can_shrink', width['width_delta'] < 0, width['width_delta'])

        rng = np.random.default_rng(options['seed'])
        bad, worst = [], 0.0
        trials = options['trials'] or 1000
        for i in range(trials):
            result = constructions.kp_experiments(
                constructions.random_contraction_pair(rng, int(rng.integers(2, 7))), self.tol)
            worst = max(worst, result['inradius_identity_error'])
            if not result['inradius_ok']:
                bad.append(i)
        report.results['random_pairs'] = {'trials': trials, 'inradius_failures': bad,
                                          'max_identity_error': worst}
        report.check('inradius_monotone_on_random_pairs', not bad, {'failures': bad[:10]})
        report.check('inradius_identity_on_random_pairs', worst < 1e-8, {'max_error': worst})
        self._kp_figure(anchors['diameter'])

    def _kp_figure(self, pair):
        self.figure = SVGFigure(np.vstack([pair.X, pair.Y]))
        for centers in (pair.X, pair.Y):
            body = diskpoly.build_disk_polygon(centers, self.tol)
            if isinstance(body, diskpoly.DiskPolygon):
                self.figure.add_disk_polygon(body)
            self.figure.stroke('#a33b20')

    # -- illumination ------------------------------------------------------

    def run_illuminate(self, scene, options, report):
        if options['counterexample']:
            X, frame = illumination.blocking_configuration()
            image = illumination.gauss_image(X, np.zeros(3), self.tol)
            result = illumination.illuminates_frame(X, frame, tol=self.tol)
            report.results.update({'X': X, 'frame': frame, 'gauss_image': image, 'result': result})
            report.check('gauss_image_at_most_pi_over_3', image.diameter <= math.pi / 3 + 1e-9, image.diameter)
            report.check('standard_frame_blocked', not result.illuminated,
                         {'witnesses': len(result.witnesses)})
            return

        X = self._require(scene, 'centers', dim=3)
        body = bp3.boundary_structure(X, self.tol) if X.shape[0] > 1 else None
        diameters = []
        if body is not None:
            for vertex in body.vertices:
                diameters.append(illumination.gauss_image(X, vertex.point, self.tol).diameter)
            for edge in body.edges:
                for z in edge.samples(4):
                    diameters.append(illumination.gauss_image(X, z, self.tol).diameter)
        widest = max(diameters, default=0.0)
        report.results['max_gauss_diameter'] = widest
        report.check('gauss_image_at_most_pi_over_3', widest <= math.pi / 3 + 1e-9, widest)

        u = parse_vector(options['u']) if options['u'] else np.array([0.0, 0.0, 1.0])
        frame = illumination.find_frame(X, u, self.tol)
        certificate = illumination.illuminates_frame(X, frame, body, self.tol)
        report.results['frame'] = frame
        report.check('find_frame_certified', certificate.illuminated, certificate.witnesses[:5])

        experiment = illumination.random_frame_experiment(X, options['trials'] or 500, options['seed'], self.tol)
        experiment['failures'] = experiment['failures'][:5]
        report.results['random_frames'] = experiment
        report.check('random_frames_illuminate', experiment['ratio'] == 1.0, experiment['ratio'])

    # -- separation --------------------------------------------------------

    def run_separate(self, scene, options, report):
        A = self._require(scene, 'points')
        B = self._require(scene, 'centers')
        n = A.shape[1]
        result = separation.smallest_separating_sphere(A, B, self.tol)
        report.results['smallest_sphere'] = result
        verdict = separation.houle_verdict(A, B, self.tol)
        report.results['houle'] = verdict
        if isinstance(result, separation.Infeasible):
            report.check('infeasible_means_not_strictly_separable', not verdict['separable'])
            return
        report.check('sphere_separates', result.margin >= -10 * self.tol.eps_geom, result.margin)
        report.check('active_set_at_most_n_plus_2', len(result.active) <= n + 2, list(result.active))
        report.check('minimal_by_inversion', separation.inversion_minimality_check(A, B, result, self.tol))
        if n in (2, 3):
            try:
                report.results['unit_sphere'] = separation.separate_by_unit_sphere(A, B, self.tol)
            except NotSeparable as exc:
                report.results['unit_sphere'] = {'separable': False, 'reason': str(exc)}
        if n == 2:
            self.figure = SVGFigure(np.vstack([A, B]))
            self.figure.add_circle(result.center, result.radius)
            for a in A:
                self.figure.add_dot(a, css_class='inner')
            self.figure.stroke('#a33b20')
            for b in B:
                self.figure.add_dot(b, css_class='outer')

    def run_kirchberger(self, scene, options, report):
        if options['counterexample']:
            example = separation.kirchberger_counterexample(options['delta'], caps=options['cap'])
            checks = separation.verify_counterexample(example, samples=options['trials'], seed=options['seed'],
                                                      tol=self.tol)
            report.results.update({'example': example, 'checks': checks})
            report.check('counterexample_verified', checks['holds'],
                         {k: checks[k] for k in ('covered', 'minimal_cover', 'a_in_conv_B', 'not_unit_separable')})
            report.check('small_subsets_separate_full_set_does_not', checks['subsets_unit_separable'],
                         checks['verdict']['verdict'])
            self.figure = SVGFigure(example.B)
            self.figure.add_circle(example.a)
            self.figure.add_dot(example.a, css_class='inner')
            self.figure.stroke('#a33b20')
            for b in example.B:
                self.figure.add_circle(b)
                self.figure.add_dot(b, css_class='outer')
            return
        A = self._require(scene, 'points')
        B = self._require(scene, 'centers')
        mode = options['kind'] or 'at_most_one'
        verdict = separation.kirchberger_verdict(A, B, mode, self.tol)
        report.results['verdict'] = verdict
        # in at_most_one mode a disagreement raises TheoremViolation before this point
        report.check('subsets_decide_full_instance',
                     mode == 'unit' or verdict.verdict != separation.KirchbergerVerdict.COUNTEREXAMPLE_WITNESS,
                     verdict.verdict.value)
