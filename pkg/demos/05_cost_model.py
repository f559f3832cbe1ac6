"""Monthly infrastructure cost: edge vs. cloud for a traffic camera.

One camera produces an image every 10 seconds, 259,200 images a month.
The edge pipeline pays a device runtime fee plus storage and put
requests for ~1 KB result messages; the cloud pipeline stores every raw
image, pays get + 2x put requests, and bills function execution.
"""

from edgebench import (
    cloud_monthly_cost,
    cost_ratio,
    edge_monthly_cost,
    load_rate_card,
    load_usage,
    monthly_bandwidth,
)
from edgebench.cost import format_bytes_binary, format_usd

card = load_rate_card("us-east-2018")
usage = load_usage("traffic-camera")

print(f"scenario: {usage.messages_per_month:,} messages/month, "
      f"{usage.avg_input_kb} KB inputs, {usage.avg_message_kb} KB results\n")

edge = edge_monthly_cost(card, usage)
print("edge pipeline:")
for name, amount in edge.components:
    print(f"  {name:<20} ${format_usd(amount)}")
print(f"  {'total':<20} ${format_usd(edge.total_micro_usd)} / month\n")

cloud = cloud_monthly_cost(card, usage)
print("cloud pipeline:")
for name, amount in cloud.components:
    print(f"  {name:<20} ${format_usd(amount)}")
print(f"  {'total':<20} ${format_usd(cloud.total_micro_usd)} / month\n")

print(f"cloud is {cost_ratio(cloud, edge):.2f}x the edge cost; with 50 cameras the")
print("gap scales linearly while the edge runtime fee stays per-device.\n")

print("network usage per month:")
print(f"  edge : {format_bytes_binary(monthly_bandwidth(usage, 'edge'))}")
print(f"  cloud: {format_bytes_binary(monthly_bandwidth(usage, 'cloud'))}")
