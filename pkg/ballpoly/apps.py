from django.apps import AppConfig


class BallpolyConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "ballpoly"
    verbose_name = "Spindle convexity and ball-polyhedra"
