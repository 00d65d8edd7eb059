from django.apps import AppConfig


class ModsymConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'twistlab.apps.modsym'
