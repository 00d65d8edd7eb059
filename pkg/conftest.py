import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'twistlab.settings')
django.setup()
