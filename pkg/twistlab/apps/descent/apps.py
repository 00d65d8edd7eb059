from django.apps import AppConfig


class DescentConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'twistlab.apps.descent'
