from django.apps import AppConfig


class LvaluesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'twistlab.apps.lvalues'
